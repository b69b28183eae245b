#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fbheat/errors.hpp"
#include "fbheat/grid.hpp"
#include "fbheat/scalar_traits.hpp"

namespace fbheat {

/// Real tridiagonal matrix stored as three arrays.  Mathematical indexing in
/// the operator formulas is 1-based (mode number m); storage is 0-based:
/// diag[i] is row i+1's diagonal, super[i] couples row i+1 to column i+2,
/// sub[i] couples row i+2 to column i+1.
template <class Real>
struct Tridiagonal {
    int n = 0;
    std::vector<Real> diag;
    std::vector<Real> super;
    std::vector<Real> sub;

    explicit Tridiagonal(int dim)
        : n(dim),
          diag(static_cast<size_t>(dim)),
          super(dim > 0 ? static_cast<size_t>(dim - 1) : 0),
          sub(dim > 0 ? static_cast<size_t>(dim - 1) : 0) {
        if (dim < 1) throw DimensionError("tridiagonal dimension must be >= 1");
    }
};

using TridiagonalMatrix = Tridiagonal<double>;

/// Truncation of A_+ = -i L_+ on the positive-mode block:
///   diag entry m, super -(eps/2) m(m+1), sub +(eps/2) m(m+1)   (1-based m),
/// so super + sub = 0 entrywise and the symmetric part is diag(1..N).
template <class Real>
Tridiagonal<Real> build_aplus_t(double eps, int N) {
    if (N < 1) throw DimensionError("A+ truncation must be >= 1");
    Tridiagonal<Real> T(N);
    for (int m = 1; m <= N; ++m) T.diag[static_cast<size_t>(m - 1)] = Real(m);
    for (int m = 1; m < N; ++m) {
        const double w = 0.5 * eps * m * (m + 1);
        T.super[static_cast<size_t>(m - 1)] = Real(-w);
        T.sub[static_cast<size_t>(m - 1)] = Real(w);
    }
    return T;
}

TridiagonalMatrix build_aplus(const EpsilonParam& eps, int N);

/// Matrix of -i L on the negative-mode block in the basis e^{-i n theta},
/// n = 1..N.  Written out in modes it is the entrywise negation of A_+, so
/// its spectrum mirrors spec(A_+) and the inverses share singular values.
TridiagonalMatrix build_aminus(const EpsilonParam& eps, int N);

/// Exact tridiagonal matrix-vector product.
OneSidedCoeffs apply(const TridiagonalMatrix& T, const OneSidedCoeffs& v);

/// Structural dissipativity certificate.  For A_+ the off-diagonals cancel in
/// the quadratic form, leaving Re(Tv,v) = sum_m m |v_m|^2 >= diag[0].
struct DissipativityReport {
    double min_quadratic_form = 0.0;
    bool structural_pass = false;
    int samples = 0;
};

DissipativityReport dissipativity_report(const TridiagonalMatrix& T, int samples = 1000,
                                         unsigned long long seed = 0x5eedULL);

/// Re<Tv,v> for a complex vector on a real tridiagonal matrix.
double quadratic_form_re(const TridiagonalMatrix& T, const OneSidedCoeffs& v);

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting for tridiagonal systems.  Fill-in is
// one extra superdiagonal; solves are O(n).  Scalar may be real (double, DD)
// or complex.
// ---------------------------------------------------------------------------

template <class Scalar>
class TridiagLU {
public:
    using Real = typename ScalarTraits<Scalar>::Real;

    /// Factor (D + S) where the three diagonals are given explicitly.
    TridiagLU(std::vector<Scalar> diag, std::vector<Scalar> super, std::vector<Scalar> sub)
        : n_(static_cast<int>(diag.size())),
          d_(std::move(diag)),
          u1_(std::move(super)),
          u2_(static_cast<size_t>(n_ > 2 ? n_ - 2 : 0), Scalar(0)),
          l_(static_cast<size_t>(n_ > 1 ? n_ - 1 : 0)),
          swapped_(static_cast<size_t>(n_ > 1 ? n_ - 1 : 0), false),
          sub0_(std::move(sub)) {
        factor();
    }

    bool singular() const { return singular_; }

    /// Solve T x = b in place.
    void solve(std::vector<Scalar>& b) const {
        if (static_cast<int>(b.size()) != n_)
            throw DimensionError("tridiagonal solve: rhs length mismatch");
        if (singular_) throw NumericalError("tridiagonal factorization is singular");
        for (int i = 0; i < n_ - 1; ++i) {
            if (swapped_[static_cast<size_t>(i)]) std::swap(b[i], b[i + 1]);
            b[i + 1] = b[i + 1] - l_[static_cast<size_t>(i)] * b[i];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            Scalar acc = b[i];
            if (i + 1 < n_) acc = acc - u1_[static_cast<size_t>(i)] * b[i + 1];
            if (i + 2 < n_) acc = acc - u2_[static_cast<size_t>(i)] * b[i + 2];
            b[i] = acc / d_[static_cast<size_t>(i)];
        }
    }

private:
    void factor() {
        using ST = ScalarTraits<Scalar>;
        // Row-oriented elimination keeping (d, u1, u2) of U and the L factors.
        std::vector<Scalar>& sub = sub0_;
        for (int i = 0; i < n_ - 1; ++i) {
            Real piv = ST::abs2(d_[static_cast<size_t>(i)]);
            Real cand = ST::abs2(sub[static_cast<size_t>(i)]);
            if (cand > piv) {
                swapped_[static_cast<size_t>(i)] = true;
                std::swap(d_[static_cast<size_t>(i)], sub[static_cast<size_t>(i)]);
                // Row i+1's diagonal swaps into u1 slot of row i.
                Scalar next_diag = d_[static_cast<size_t>(i + 1)];
                d_[static_cast<size_t>(i + 1)] = u1_[static_cast<size_t>(i)];
                u1_[static_cast<size_t>(i)] = next_diag;
                if (i + 2 < n_) {
                    u2_[static_cast<size_t>(i)] = u1_[static_cast<size_t>(i + 1)];
                    u1_[static_cast<size_t>(i + 1)] = Scalar(0);
                }
            }
            if (ST::abs2(d_[static_cast<size_t>(i)]) == Real(0)) {
                singular_ = true;
                return;
            }
            const Scalar mult = sub[static_cast<size_t>(i)] / d_[static_cast<size_t>(i)];
            l_[static_cast<size_t>(i)] = mult;
            d_[static_cast<size_t>(i + 1)] =
                d_[static_cast<size_t>(i + 1)] - mult * u1_[static_cast<size_t>(i)];
            if (i + 2 < n_)
                u1_[static_cast<size_t>(i + 1)] =
                    u1_[static_cast<size_t>(i + 1)] - mult * u2_[static_cast<size_t>(i)];
        }
        if (ST::abs2(d_[static_cast<size_t>(n_ - 1)]) == Real(0)) singular_ = true;
    }

    int n_;
    std::vector<Scalar> d_, u1_, u2_, l_;
    std::vector<bool> swapped_;
    std::vector<Scalar> sub0_;
    bool singular_ = false;
};

/// Factor (T - shift I) for a real tridiagonal T with a scalar of choice.
template <class Scalar, class Real>
TridiagLU<Scalar> shifted_lu(const Tridiagonal<Real>& T, const Scalar& shift) {
    std::vector<Scalar> d(static_cast<size_t>(T.n)), up(T.super.size()), lo(T.sub.size());
    for (int i = 0; i < T.n; ++i) d[static_cast<size_t>(i)] = Scalar(T.diag[static_cast<size_t>(i)]) - shift;
    for (size_t i = 0; i < T.super.size(); ++i) up[i] = Scalar(T.super[i]);
    for (size_t i = 0; i < T.sub.size(); ++i) lo[i] = Scalar(T.sub[i]);
    return TridiagLU<Scalar>(std::move(d), std::move(up), std::move(lo));
}

/// y = T x for generic scalars over a real tridiagonal matrix.
template <class Scalar, class Real>
std::vector<Scalar> tridiag_apply(const Tridiagonal<Real>& T, const std::vector<Scalar>& x) {
    if (static_cast<int>(x.size()) != T.n)
        throw DimensionError("tridiagonal apply: vector length " + std::to_string(x.size()) +
                             " vs dimension " + std::to_string(T.n));
    std::vector<Scalar> y(x.size());
    for (int i = 0; i < T.n; ++i) {
        Scalar acc = Scalar(T.diag[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)];
        if (i > 0) acc = acc + Scalar(T.sub[static_cast<size_t>(i - 1)]) * x[static_cast<size_t>(i - 1)];
        if (i + 1 < T.n) acc = acc + Scalar(T.super[static_cast<size_t>(i)]) * x[static_cast<size_t>(i + 1)];
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

/// Infinity norm, used to scale eigenpair residuals.
template <class Real>
Real tridiag_inf_norm(const Tridiagonal<Real>& T) {
    Real best(0);
    for (int i = 0; i < T.n; ++i) {
        Real row = abs(T.diag[static_cast<size_t>(i)]);
        if (i > 0) row += abs(T.sub[static_cast<size_t>(i - 1)]);
        if (i + 1 < T.n) row += abs(T.super[static_cast<size_t>(i)]);
        if (row > best) best = row;
    }
    return best;
}

} // namespace fbheat
