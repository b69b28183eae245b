#include "fbheat/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbheat/quadrature.hpp"

namespace fbheat {

double sl_p(double x, const EpsilonParam& eps) {
    const double ie = 1.0 / eps.value();
    return std::pow(1.0 - x, 1.0 + ie) * std::pow(1.0 + x, 1.0 - ie);
}

double sl_w(double x, const EpsilonParam& eps) {
    const double ie = 1.0 / eps.value();
    return std::pow(1.0 - x, ie) * std::pow(1.0 + x, -ie) / x;
}

namespace {

/// Smooth part of the weight: w(x) = g(x)/x.
double w_smooth(double x, double inv_eps) {
    return std::pow(1.0 - x, inv_eps) * std::pow(1.0 + x, -inv_eps);
}

std::vector<double> graded_mesh(int elements) {
    // Geometric layers (ratio 1.1) into both endpoints, capped at 150 levels
    // so the smallest element stays representable, uniform fill between.
    const double r = 1.1;
    const int L = std::min(elements / 4, 150);
    const double h_u = 1.0 / elements;
    std::vector<double> widths_layer(static_cast<size_t>(L));
    for (int i = 0; i < L; ++i)
        widths_layer[static_cast<size_t>(i)] = h_u * std::pow(r, i - L);
    double span = 0.0;
    for (double w : widths_layer) span += w;
    const int interior = elements - 2 * L;
    const double hi = (1.0 - 2.0 * span) / interior;

    std::vector<double> nodes{0.0};
    for (int i = 0; i < L; ++i) nodes.push_back(nodes.back() + widths_layer[static_cast<size_t>(i)]);
    for (int i = 0; i < interior; ++i) nodes.push_back(nodes.back() + hi);
    for (int i = L - 1; i >= 0; --i)
        nodes.push_back(nodes.back() + widths_layer[static_cast<size_t>(i)]);
    nodes.back() = 1.0;
    return nodes;
}

} // namespace

SLDiscretization sl_assemble(const EpsilonParam& eps, int elements) {
    if (elements < 64) throw DimensionError("Sturm-Liouville mesh needs at least 64 elements");
    const double ie = 1.0 / eps.value();
    std::vector<double> nodes = graded_mesh(elements);
    const int M = elements; // degrees of freedom at x_1..x_M

    SLDiscretization d{nodes, TridiagonalMatrix(M), TridiagonalMatrix(M), eps.value()};
    for (auto& v : d.K.diag) v = 0.0;
    for (auto& v : d.Mass.diag) v = 0.0;

    const GaussRule rule = gauss_legendre(12);

    for (int el = 0; el < elements; ++el) {
        const double a = nodes[static_cast<size_t>(el)];
        const double b = nodes[static_cast<size_t>(el + 1)];
        const double h = b - a;

        // Stiffness: (int p) / h^2 on the element.
        double pint = 0.0;
        {
            const double mid = 0.5 * (a + b), hw = 0.5 * h;
            for (size_t q = 0; q < rule.x.size(); ++q) {
                const double x = mid + hw * rule.x[q];
                pint += rule.w[q] * std::pow(1.0 - x, 1.0 + ie) * std::pow(1.0 + x, 1.0 - ie);
            }
            pint *= hw;
        }
        const double s = pint / (h * h);

        // Mass entries against the 1/x weight.
        double mLL = 0.0, mLR = 0.0, mRR = 0.0;
        if (el == 0) {
            // Only the right hat exists; its x^2 kills the 1/x singularity.
            const double mid = 0.5 * (a + b), hw = 0.5 * h;
            for (size_t q = 0; q < rule.x.size(); ++q) {
                const double x = mid + hw * rule.x[q];
                mRR += rule.w[q] * x * w_smooth(x, ie);
            }
            mRR *= hw / (h * h);
        } else {
            // x = e^u absorbs the weight exactly: int F(x)/x dx = int F(e^u) du.
            const double ua = std::log(a), ub = std::log(b);
            const double mid = 0.5 * (ua + ub), hw = 0.5 * (ub - ua);
            for (size_t q = 0; q < rule.x.size(); ++q) {
                const double x = std::exp(mid + hw * rule.x[q]);
                const double g = w_smooth(x, ie);
                const double fl = (b - x) / h, fr = (x - a) / h;
                mLL += rule.w[q] * g * fl * fl;
                mLR += rule.w[q] * g * fl * fr;
                mRR += rule.w[q] * g * fr * fr;
            }
            mLL *= hw;
            mLR *= hw;
            mRR *= hw;
        }
        if (!std::isfinite(s) || !std::isfinite(mRR) || !std::isfinite(mLL))
            throw AccuracyError("element quadrature failed near a singular endpoint", s);

        // Global dof indices: left node el-1 (absent when el==0), right node el.
        const int right = el;
        if (el == 0) {
            d.K.diag[0] += s;
            d.Mass.diag[0] += mRR;
        } else {
            const int left = el - 1;
            d.K.diag[static_cast<size_t>(left)] += s;
            d.K.diag[static_cast<size_t>(right)] += s;
            d.K.super[static_cast<size_t>(left)] += -s;
            d.K.sub[static_cast<size_t>(left)] += -s;
            d.Mass.diag[static_cast<size_t>(left)] += mLL;
            d.Mass.diag[static_cast<size_t>(right)] += mRR;
            d.Mass.super[static_cast<size_t>(left)] += mLR;
            d.Mass.sub[static_cast<size_t>(left)] += mLR;
        }
    }
    return d;
}

namespace {

/// Number of pencil eigenvalues below sigma = negative pivots of the
/// LDL^T factorization of K - sigma*Mass.
int inertia_count(const SLDiscretization& d, double sigma) {
    const int n = d.K.n;
    int count = 0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        double di = d.K.diag[static_cast<size_t>(i)] - sigma * d.Mass.diag[static_cast<size_t>(i)];
        if (i > 0) {
            const double b =
                d.K.super[static_cast<size_t>(i - 1)] - sigma * d.Mass.super[static_cast<size_t>(i - 1)];
            di -= b * b / prev;
        }
        if (di == 0.0) di = -1e-300; // nudge exact ties off the shift
        if (di < 0.0) ++count;
        prev = di;
    }
    return count;
}

/// One shifted inverse-iteration pass for the pencil, returning the Rayleigh
/// quotient; used to polish bisection output.
double rayleigh_polish(const SLDiscretization& d, double sigma) {
    const int n = d.K.n;
    std::vector<double> kd(d.K.diag), ks(d.K.super), kb(d.K.sub);
    for (int i = 0; i < n; ++i) kd[static_cast<size_t>(i)] -= sigma * d.Mass.diag[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) {
        ks[static_cast<size_t>(i)] -= sigma * d.Mass.super[static_cast<size_t>(i)];
        kb[static_cast<size_t>(i)] -= sigma * d.Mass.sub[static_cast<size_t>(i)];
    }
    TridiagLU<double> lu(std::move(kd), std::move(ks), std::move(kb));
    if (lu.singular()) return sigma;

    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 0.25 * std::sin(1.0 + i);
    double lam = sigma;
    for (int it = 0; it < 3; ++it) {
        std::vector<double> mv = tridiag_apply(d.Mass, v);
        lu.solve(mv);
        v = std::move(mv);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) return sigma;
        for (double& x : v) x /= nrm;
        const std::vector<double> kv = tridiag_apply(d.K, v);
        const std::vector<double> mv2 = tridiag_apply(d.Mass, v);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += v[static_cast<size_t>(i)] * kv[static_cast<size_t>(i)];
            den += v[static_cast<size_t>(i)] * mv2[static_cast<size_t>(i)];
        }
        if (den > 0.0 && std::isfinite(num / den)) lam = num / den;
    }
    return lam;
}

} // namespace

std::vector<double> sl_eigenvalues(const SLDiscretization& d, int k) {
    if (k == 0) return {};
    if (k < 0 || k > d.K.n / 4)
        throw DimensionError("requested eigenvalue count must satisfy 0 <= k <= M/4");

    double hi = 1.0;
    int guard = 0;
    while (inertia_count(d, hi) < k) {
        hi *= 4.0;
        if (++guard > 200) throw NumericalError("failed to bracket the requested eigenvalues");
    }

    std::vector<double> out;
    out.reserve(static_cast<size_t>(k));
    for (int j = 1; j <= k; ++j) {
        double lo = -1e-8, up = hi;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + up);
            if (inertia_count(d, mid) >= j)
                up = mid;
            else
                lo = mid;
            if (up - lo <= 1e-13 * std::max(1.0, std::abs(up))) break;
        }
        const double approx = 0.5 * (lo + up);
        // Polish with a slightly detuned shift so the factorization stays regular.
        const double lam = rayleigh_polish(d, approx * (1.0 - 1e-7) - 1e-9);
        out.push_back(std::abs(lam - approx) <= 1e-3 * std::max(1.0, std::abs(approx)) ? lam
                                                                                       : approx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SLCrossCheck cross_check(const EpsilonParam& eps, int N, int k, int mesh_elements,
                         Precision mode) {
    const Spectrum spec = stabilized_spectrum(eps, N, mode);
    std::vector<Cplx> stab = spec.stabilized_values();
    if (static_cast<int>(stab.size()) < k)
        throw NumericalError("only " + std::to_string(stab.size()) +
                             " stabilized eigenvalues at truncation " + std::to_string(N) +
                             ", need " + std::to_string(k));

    const SLDiscretization d = sl_assemble(eps, mesh_elements);
    const std::vector<double> mu_sl = sl_eigenvalues(d, k);

    SLCrossCheck chk;
    for (int j = 0; j < k; ++j) {
        const double scaled = 2.0 * stab[static_cast<size_t>(j)].real() / eps.value();
        chk.pairs.emplace_back(mu_sl[static_cast<size_t>(j)], scaled);
        const double rel = std::abs(mu_sl[static_cast<size_t>(j)] - scaled) /
                           std::max(std::abs(scaled), 1e-300);
        chk.max_rel_diff = std::max(chk.max_rel_diff, rel);
    }
    return chk;
}

} // namespace fbheat
