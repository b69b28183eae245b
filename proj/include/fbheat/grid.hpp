#pragma once

#include <complex>
#include <vector>

#include "fbheat/errors.hpp"

namespace fbheat {

using Cplx = std::complex<double>;

/// The physical parameter epsilon.  The whole theory lives on 0 < eps < 2;
/// construction rejects anything else.
class EpsilonParam {
public:
    explicit EpsilonParam(double value) : value_(value) {
        if (!(value > 0.0) || !(value < 2.0))
            throw DomainError("epsilon must lie in the open interval (0,2), got " +
                              std::to_string(value));
    }
    double value() const { return value_; }

private:
    double value_;
};

/// Complex function on (-pi,pi] sampled at theta_j = -pi + 2*pi*j/M,
/// j = 0..M-1.  M must be at least 8; operations that fold the grid
/// (apply_J) additionally need M even.
class PeriodicGridFunction {
public:
    explicit PeriodicGridFunction(std::vector<Cplx> samples);
    static PeriodicGridFunction zeros(int M);

    int size() const { return static_cast<int>(samples_.size()); }
    double theta(int j) const;
    const std::vector<Cplx>& samples() const { return samples_; }
    std::vector<Cplx>& samples() { return samples_; }
    Cplx operator[](int j) const { return samples_[static_cast<size_t>(j)]; }
    Cplx& operator[](int j) { return samples_[static_cast<size_t>(j)]; }

private:
    std::vector<Cplx> samples_;
};

/// Two-sided Fourier coefficients v_k, k = -N..N, of h(theta) = sum v_k e^{ik theta}.
/// With this normalization v_0 is the mean of h over the period.
class FourierCoeffsFull {
public:
    explicit FourierCoeffsFull(int band);
    FourierCoeffsFull(int band, std::vector<Cplx> packed);

    int band() const { return band_; }
    Cplx at(int k) const { return packed_[static_cast<size_t>(k + band_)]; }
    Cplx& at(int k) { return packed_[static_cast<size_t>(k + band_)]; }
    Cplx mean() const { return at(0); }
    /// Storage in index order k = -N..N.
    const std::vector<Cplx>& packed() const { return packed_; }

private:
    int band_;
    std::vector<Cplx> packed_;
};

/// Positive-mode coefficients v_1..v_N; the boundary trace of an element of
/// the zero-at-origin Hardy space on the unit disc.
using OneSidedCoeffs = std::vector<Cplx>;

// ---------------------------------------------------------------------------
// Transforms.  The grid scale stays small (M <= 8192), so the DFT is a direct
// summation; conversions happen only at pipeline boundaries.
// ---------------------------------------------------------------------------

/// Coefficients v_k, k = -(M/2-1)..(M/2-1), of the trigonometric interpolant.
FourierCoeffsFull dft(const PeriodicGridFunction& g);

/// Samples of sum v_k e^{ik theta_j} on the M-point grid; needs M >= 2N+2.
PeriodicGridFunction idft(const FourierCoeffsFull& c, int M);

/// Evaluate the trigonometric polynomial at an arbitrary angle.
Cplx eval_fourier(const FourierCoeffsFull& c, double theta);

// ---------------------------------------------------------------------------
// The differential expression and the symmetry.
// ---------------------------------------------------------------------------

/// Exact mode arithmetic for ell[h] = eps*(sin(theta) h')' + h':
///   (L v)_m = i*( m v_m + (eps/2) m(m-1) v_{m-1} - (eps/2) m(m+1) v_{m+1} ).
/// The positive, zero and negative mode blocks do not mix, and the output
/// mean vanishes for every input.  Output band is band(h)+1.
FourierCoeffsFull apply_ell(const FourierCoeffsFull& h, const EpsilonParam& eps);

/// (J h)(theta) = h(pi - theta); an exact grid permutation (M must be even).
PeriodicGridFunction apply_J(const PeriodicGridFunction& h);

// ---------------------------------------------------------------------------
// Norms and inner products (mean-square normalization over the period, so
// grid and coefficient sides agree for band-limited data).
// ---------------------------------------------------------------------------

double l2_norm(const PeriodicGridFunction& g);
double l2_norm(const FourierCoeffsFull& c);
double l2_norm(const OneSidedCoeffs& v);
Cplx inner(const FourierCoeffsFull& a, const FourierCoeffsFull& b);
Cplx inner(const PeriodicGridFunction& a, const PeriodicGridFunction& b);

// ---------------------------------------------------------------------------
// Block embeddings.
// ---------------------------------------------------------------------------

/// Embed v_1..v_N into a full coefficient set of band N.
FourierCoeffsFull one_sided_to_full(const OneSidedCoeffs& v);

/// Extract modes 1..band as a one-sided vector.
OneSidedCoeffs positive_part(const FourierCoeffsFull& c);

} // namespace fbheat
