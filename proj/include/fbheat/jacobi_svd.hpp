#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fbheat/dense.hpp"
#include "fbheat/errors.hpp"
#include "fbheat/scalar_traits.hpp"

namespace fbheat {

/// Singular values by the one-sided Jacobi method: cyclic sweeps of plane
/// rotations orthogonalizing column pairs until every Gram off-diagonal is
/// negligible.  Works for real, complex and DD scalars; small singular values
/// come out with high relative accuracy, which the Gram-condition diagnostics
/// rely on.
template <class Scalar>
std::vector<typename ScalarTraits<Scalar>::Real> jacobi_singular_values(DenseMatrix<Scalar> A,
                                                                        int max_sweeps = 60) {
    using ST = ScalarTraits<Scalar>;
    using Real = typename ST::Real;
    const int n = A.cols();
    const int m = A.rows();

    const Real tol = Real(64) * num_eps<Real>();
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Real a(0), b(0);
                Scalar c(0);
                for (int k = 0; k < m; ++k) {
                    a += ST::abs2(A(k, i));
                    b += ST::abs2(A(k, j));
                    c += ST::conj(A(k, i)) * A(k, j);
                }
                const Real cm = sqrt(ST::abs2(c));
                if (!(cm > tol * sqrt(a * b))) continue;
                converged = false;
                // Hermitian 2x2 [[a, c],[conj(c), b]]: diagonalize with a
                // real rotation after peeling off the phase of c.
                const Scalar phase = c / Scalar(cm);
                const Real tau = (b - a) / (Real(2) * cm);
                const Real t = (tau >= Real(0) ? Real(1) / (tau + sqrt(Real(1) + tau * tau))
                                               : Real(-1) / (-tau + sqrt(Real(1) + tau * tau)));
                const Real cs = Real(1) / sqrt(Real(1) + t * t);
                const Real sn = t * cs;
                for (int k = 0; k < m; ++k) {
                    const Scalar u = A(k, i);
                    const Scalar v = A(k, j);
                    A(k, i) = u * Scalar(cs) - v * ST::conj(phase) * Scalar(sn);
                    A(k, j) = u * phase * Scalar(sn) + v * Scalar(cs);
                }
            }
        }
    }
    if (!converged)
        throw NumericalError("one-sided Jacobi SVD did not converge within the sweep cap");

    std::vector<Real> sv(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        Real acc(0);
        for (int k = 0; k < m; ++k) acc += ST::abs2(A(k, j));
        sv[static_cast<size_t>(j)] = sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), [](const Real& x, const Real& y) { return y < x; });
    return sv;
}

} // namespace fbheat
