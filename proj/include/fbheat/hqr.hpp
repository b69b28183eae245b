#pragma once

#include <string>
#include <vector>

#include "fbheat/dense.hpp"
#include "fbheat/errors.hpp"
#include "fbheat/scalar_traits.hpp"
#include "fbheat/tridiagonal.hpp"

namespace fbheat {

/// Eigenvalues of a real upper-Hessenberg matrix by the implicit double-shift
/// QR iteration with deflation: Wilkinson-type shifts from the trailing 2x2,
/// exceptional shifts every 10 stalled sweeps, complex pairs extracted from
/// deflated 2x2 blocks.  Arithmetic stays real throughout, so the routine
/// runs unchanged in double or DD.
///
/// The input matrix is destroyed.  Throws NumericalError naming the deflation
/// index if an eigenvalue fails to settle within the iteration cap.
template <class Real>
void hqr_eigenvalues(DenseMatrix<Real>& a, std::vector<Real>& wr, std::vector<Real>& wi,
                     int iter_cap = 40) {
    const int n = a.rows();
    wr.assign(static_cast<size_t>(n), Real(0));
    wi.assign(static_cast<size_t>(n), Real(0));
    const Real eps = num_eps<Real>();
    auto sign_of = [](const Real& mag, const Real& s) {
        return s >= Real(0) ? abs(mag) : -abs(mag);
    };

    Real anorm(0);
    for (int i = 0; i < n; ++i)
        for (int j = (i > 0 ? i - 1 : 0); j < n; ++j) anorm += abs(a(i, j));
    if (!(anorm > Real(0))) { // zero matrix
        return;
    }

    int nn = n - 1;
    Real t(0);
    while (nn >= 0) {
        int its = 0;
        while (true) {
            int l;
            for (l = nn; l >= 1; --l) {
                Real s = abs(a(l - 1, l - 1)) + abs(a(l, l));
                if (s == Real(0)) s = anorm;
                if (abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = Real(0);
                    break;
                }
            }
            if (l < 0) l = 0;
            Real x = a(nn, nn);
            if (l == nn) {
                wr[static_cast<size_t>(nn)] = x + t;
                wi[static_cast<size_t>(nn)] = Real(0);
                --nn;
                break;
            }
            Real y = a(nn - 1, nn - 1);
            Real w = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) {
                Real p = Real(0.5) * (y - x);
                Real q = p * p + w;
                Real z = sqrt(abs(q));
                x = x + t;
                if (q >= Real(0)) {
                    z = p + sign_of(z, p);
                    wr[static_cast<size_t>(nn - 1)] = wr[static_cast<size_t>(nn)] = x + z;
                    if (z != Real(0)) wr[static_cast<size_t>(nn)] = x - w / z;
                    wi[static_cast<size_t>(nn - 1)] = wi[static_cast<size_t>(nn)] = Real(0);
                } else {
                    wr[static_cast<size_t>(nn - 1)] = wr[static_cast<size_t>(nn)] = x + p;
                    wi[static_cast<size_t>(nn)] = z;
                    wi[static_cast<size_t>(nn - 1)] = -z;
                }
                nn -= 2;
                break;
            }
            if (its >= iter_cap)
                throw NumericalError("QR iteration did not converge at deflation index " +
                                     std::to_string(nn));
            if (its == 10 || its == 20) {
                // Exceptional shift against stalling.
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                Real s = abs(a(nn, nn - 1)) + abs(a(nn - 1, nn - 2));
                y = x = Real(0.75) * s;
                w = Real(-0.4375) * s * s;
            }
            ++its;

            // First column of the double-shift polynomial; back up until the
            // bulge can be started without disturbing converged parts.
            int m;
            Real p(0), q(0), r(0), z(0);
            for (m = nn - 2; m >= l; --m) {
                z = a(m, m);
                Real rr = x - z;
                Real ss = y - z;
                p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - rr - ss;
                r = a(m + 2, m + 1);
                Real scale = abs(p) + abs(q) + abs(r);
                p /= scale;
                q /= scale;
                r /= scale;
                if (m == l) break;
                const Real u = abs(a(m, m - 1)) * (abs(q) + abs(r));
                const Real v = abs(p) * (abs(a(m - 1, m - 1)) + abs(z) + abs(a(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                a(i, i - 2) = Real(0);
                if (i != m + 2) a(i, i - 3) = Real(0);
            }

            // Double QR sweep: chase the bulge down rows m..nn with 3x3
            // Householder reflectors.
            for (int k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = (k != nn - 1) ? a(k + 2, k - 1) : Real(0);
                    x = abs(p) + abs(q) + abs(r);
                    if (x != Real(0)) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                Real s = sign_of(sqrt(p * p + q * q + r * r), p);
                if (s == Real(0)) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) {
                    p = a(k, j) + q * a(k + 1, j);
                    if (k != nn - 1) {
                        p += r * a(k + 2, j);
                        a(k + 2, j) -= p * z;
                    }
                    a(k + 1, j) -= p * y;
                    a(k, j) -= p * x;
                }
                const int mmin = nn < k + 3 ? nn : k + 3;
                for (int i = l; i <= mmin; ++i) {
                    p = x * a(i, k) + y * a(i, k + 1);
                    if (k != nn - 1) {
                        p += z * a(i, k + 2);
                        a(i, k + 2) -= p * r;
                    }
                    a(i, k + 1) -= p * q;
                    a(i, k) -= p;
                }
            }
        }
    }
}

/// Densify a tridiagonal matrix into an eigensolver workspace.
template <class Real>
DenseMatrix<Real> densify(const Tridiagonal<Real>& T) {
    DenseMatrix<Real> a(T.n, T.n);
    for (int i = 0; i < T.n; ++i) {
        a(i, i) = T.diag[static_cast<size_t>(i)];
        if (i + 1 < T.n) {
            a(i, i + 1) = T.super[static_cast<size_t>(i)];
            a(i + 1, i) = T.sub[static_cast<size_t>(i)];
        }
    }
    return a;
}

} // namespace fbheat
