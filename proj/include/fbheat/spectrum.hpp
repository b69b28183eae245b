#pragma once

#include <complex>
#include <vector>

#include "fbheat/dd.hpp"
#include "fbheat/grid.hpp"
#include "fbheat/tridiagonal.hpp"

namespace fbheat {

enum class Precision { standard, extended };

inline const char* to_string(Precision p) {
    return p == Precision::standard ? "standard" : "extended";
}

/// One eigenvalue of a finite section.  "stabilized" means the value is
/// reproduced by the doubled truncation within match_tol; only stabilized
/// values are claimed as approximations to the spectrum of the operator.
struct SpectrumRecord {
    Cplx mu;
    double residual = 0.0;
    bool stabilized = false;
    double gap_to_nearest = 0.0;
};

struct Spectrum {
    std::vector<SpectrumRecord> records; // sorted by Re(mu) ascending
    int truncation = 0;
    double epsilon = 0.0;
    Precision precision_mode = Precision::standard;

    int n_stabilized() const;
    /// Stabilized values in ascending Re order.
    std::vector<Cplx> stabilized_values() const;
};

/// Acceptance rule for truncated eigenvalues: relative agreement between the
/// N and 2N sections.  reality is asserted only as precisely as stabilization
/// itself, hence the shared tolerance.
inline constexpr double kMatchTol = 1e-8;
inline constexpr double kRealityTol = 1e-8;

/// All eigenvalues of the (already Hessenberg) real tridiagonal matrix via
/// shifted QR with deflation.
std::vector<Cplx> eigenvalues_qr(const TridiagonalMatrix& T);

/// Eigenvalues at truncations N and 2N with the stabilization filter applied.
/// In extended mode the candidates are polished with double-double
/// shift-and-invert refinement (through a full DD QR up to moderate N), which
/// pushes the wall where rounding masks truncation agreement out to higher
/// mode numbers.  Throws NumericalError when nothing stabilizes.
Spectrum stabilized_spectrum(const EpsilonParam& eps, int N,
                             Precision mode = Precision::standard);

/// Unit eigenvector for a computed eigenvalue, by inverse iteration on the
/// tridiagonal factorization; an exactly singular shift is perturbed by
/// 1e-13 and retried once.  Guarantees ||Tv - mu v|| <= 1e-10 ||T||.
OneSidedCoeffs eigenvector(const TridiagonalMatrix& T, Cplx mu);

/// Residual ||Tv - mu v||_2 / ||T||_inf of a candidate eigenpair.
double eigenpair_residual(const TridiagonalMatrix& T, const OneSidedCoeffs& v, Cplx mu);

// ---------------------------------------------------------------------------
// Refined real eigenpairs for the basis diagnostics.
// ---------------------------------------------------------------------------

template <class Real>
struct Eigenpair {
    Real mu{};
    std::vector<Real> vec; // unit norm, length = truncation
    double residual = 0.0; // ||Tv - mu v|| / ||T||_inf in the working precision
    bool stabilized = false;
};

/// The `count` lowest (by Re) real eigenpairs of the A_+ section of size N:
/// double QR supplies seeds, then shift-and-invert iteration with
/// Rayleigh-quotient updates polishes each pair in the working precision.
/// Stabilization is assessed by running the same refinement on the doubled
/// section.  The DD variant resolves the pairs to ~1e-32, which the
/// basis-angle diagnostics need once the eigenvectors become nearly
/// dependent.
std::vector<Eigenpair<double>> lowest_eigenpairs(const EpsilonParam& eps, int N, int count);
std::vector<Eigenpair<DD>> lowest_eigenpairs_dd(const EpsilonParam& eps, int N, int count);

} // namespace fbheat
