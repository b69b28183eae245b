#include "fbheat/invsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fbheat/quadrature.hpp"

namespace fbheat {

namespace {

constexpr double kPi = std::numbers::pi;

DecayFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    DecayFit fit;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && std::abs(ys[i]) > 1e-300) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(std::abs(ys[i])));
        }
    }
    const size_t n = lx.size();
    if (n < 3) {
        fit.inconclusive = true;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    fit.exponent = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
        rss += r * r;
    }
    fit.fit_residual = std::sqrt(rss / n);
    fit.inconclusive = (n < 6) || (fit.fit_residual > 0.2);
    return fit;
}

/// Scaled prefix data for the weighted cumulative integral on one half line
/// (0, pi).  All exponentials carry non-positive arguments, so the huge
/// tan-power factors of the raw kernel never appear.
struct HalfLine {
    int sign = +1;            // +1: theta > 0 branch, -1: mirrored branch
    std::vector<double> b;    // panel breakpoints, b0 = 0, bP = pi
    std::vector<double> lam;  // log(tan(b/2))/eps  (lam[0] = -inf)
    std::vector<Cplx> F;      // plain prefix integral of phi at b_k
    std::vector<Cplx> S;      // weighted prefix, scaled by e^{-lam(b_k)}
};

class ExplicitEvaluator {
public:
    ExplicitEvaluator(const FourierCoeffsFull& fc, double eps, int order)
        : fc_(fc), eps_(eps), rule_(gauss_legendre(order)) {
        const std::vector<double> bp = graded_breakpoints(kPi, 1e-10, 1.15);
        build(half_[0], bp, +1);
        build(half_[1], bp, -1);
        k1_ = compute_k1_value();
    }

    /// I(theta) = int_0^theta f(t) (1 - W(t,theta)) dt.
    Cplx integral_part(double theta) const {
        if (theta == 0.0) return {0.0, 0.0};
        const int side = theta > 0.0 ? 0 : 1;
        const Cplx val = eval_half(half_[side], std::abs(theta));
        return side == 0 ? val : -val;
    }

    Cplx k1() const { return k1_; }

private:
    double lam(double s) const { return std::log(std::tan(0.5 * s)) / eps_; }

    Cplx phi(int sign, double s) const { return eval_fourier(fc_, sign > 0 ? s : -s); }

    void build(HalfLine& h, const std::vector<double>& bp, int sign) {
        const size_t P = bp.size() - 1;
        h.sign = sign;
        h.b = bp;
        h.lam.resize(bp.size());
        for (size_t k = 0; k < bp.size(); ++k)
            h.lam[k] = bp[k] == 0.0 ? -std::numeric_limits<double>::infinity() : lam(bp[k]);
        h.F.assign(bp.size(), Cplx(0.0));
        h.S.assign(bp.size(), Cplx(0.0));
        for (size_t k = 1; k <= P; ++k) {
            const double a = bp[k - 1], bb = bp[k];
            const double mid = 0.5 * (a + bb), hw = 0.5 * (bb - a);
            Cplx plain(0.0), weighted(0.0);
            for (size_t q = 0; q < rule_.x.size(); ++q) {
                const double s = mid + hw * rule_.x[q];
                const Cplx fv = phi(sign, s);
                plain += rule_.w[q] * fv;
                weighted += rule_.w[q] * fv * std::exp(lam(s) - h.lam[k]);
            }
            h.F[k] = h.F[k - 1] + hw * plain;
            const double decay = std::exp(h.lam[k - 1] - h.lam[k]);
            h.S[k] = h.S[k - 1] * decay + hw * weighted;
        }
    }

    /// int_0^x phi (1 - e^{lam(s)-lam(x)}) ds for x in (0, pi].
    Cplx eval_half(const HalfLine& h, double x) const {
        const int sign = h.sign;
        const size_t k =
            static_cast<size_t>(std::upper_bound(h.b.begin(), h.b.end() - 1, x) - h.b.begin());
        const double a = h.b[k - 1];
        const double lx = (x >= h.b.back()) ? h.lam.back() : lam(std::min(x, kPi));
        const double mid = 0.5 * (a + x), hw = 0.5 * (x - a);
        Cplx plain(0.0), weighted(0.0);
        for (size_t q = 0; q < rule_.x.size(); ++q) {
            const double s = mid + hw * rule_.x[q];
            const Cplx fv = phi(sign, s);
            plain += rule_.w[q] * fv;
            weighted += rule_.w[q] * fv * std::exp(lam(s) - lx);
        }
        const Cplx carried = h.S[k - 1] * std::exp(h.lam[k - 1] - lx);
        return h.F[k - 1] + hw * plain - (carried + hw * weighted);
    }

    Cplx compute_k1_value() const {
        // k1 = -(1/2pi) int_{-pi}^{pi} I(theta) dtheta.
        Cplx total(0.0);
        for (int side = 0; side < 2; ++side) {
            const HalfLine& h = half_[side];
            for (size_t k = 1; k < h.b.size(); ++k) {
                const double a = h.b[k - 1], bb = h.b[k];
                const double mid = 0.5 * (a + bb), hw = 0.5 * (bb - a);
                Cplx acc(0.0);
                for (size_t q = 0; q < rule_.x.size(); ++q) {
                    const double s = mid + hw * rule_.x[q];
                    const Cplx val = eval_half(h, s);
                    acc += rule_.w[q] * (side == 0 ? val : -val);
                }
                total += hw * acc;
            }
        }
        return -total / (2.0 * kPi);
    }

    const FourierCoeffsFull& fc_;
    double eps_;
    GaussRule rule_;
    HalfLine half_[2];
    Cplx k1_;
};

FourierCoeffsFull project_mean_free(const PeriodicGridFunction& f) {
    FourierCoeffsFull fc = dft(f);
    const double scale = std::max(1.0, l2_norm(fc));
    if (std::abs(fc.mean()) > 1e-10 * scale)
        throw PreconditionError("right-hand side must be mean-free: |mean| = " +
                                std::to_string(std::abs(fc.mean())) +
                                " exceeds 1e-10 relative tolerance");
    fc.at(0) = 0.0;
    return fc;
}

} // namespace

DecayFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionError("fit_power_law: length mismatch");
    return fit_loglog(xs, ys);
}

double weight_ratio(double t, double theta, const EpsilonParam& eps) {
    const bool pos_branch = 0.0 <= t && t <= theta && theta < kPi;
    const bool neg_branch = -kPi < theta && theta <= t && t <= 0.0;
    if (!pos_branch && !neg_branch)
        throw DomainError("weight_ratio requires 0 <= t <= theta < pi or -pi < theta <= t <= 0");
    if (t == theta) return 1.0;
    if (t == 0.0) return 0.0;
    const double d = std::log(std::tan(0.5 * std::abs(t))) - std::log(std::tan(0.5 * std::abs(theta)));
    return std::exp(d / eps.value());
}

ExplicitSolveResult solve_explicit(const PeriodicGridFunction& f, const EpsilonParam& eps,
                                   double accuracy_goal) {
    const FourierCoeffsFull fc = project_mean_free(f);
    const int M = f.size();

    ExplicitEvaluator fine(fc, eps.value(), 16);
    ExplicitEvaluator coarse(fc, eps.value(), 8);

    PeriodicGridFunction h = PeriodicGridFunction::zeros(M);
    double disc = std::abs(fine.k1() - coarse.k1());
    for (int j = 0; j < M; ++j) {
        const double theta = h.theta(j);
        const Cplx val = fine.integral_part(theta);
        disc = std::max(disc, std::abs(val - coarse.integral_part(theta)));
        h[j] = val + fine.k1();
    }
    // Pin the discrete mean at zero exactly.
    Cplx mean(0.0);
    for (int j = 0; j < M; ++j) mean += h[j];
    mean /= static_cast<double>(M);
    for (int j = 0; j < M; ++j) h[j] -= mean;

    if (disc > accuracy_goal)
        throw AccuracyError("explicit-solver quadrature did not converge: estimate " +
                                std::to_string(disc) + " above goal " +
                                std::to_string(accuracy_goal),
                            disc);

    ExplicitSolveResult result{std::move(h), K1Functional{fine.k1(), disc}, 0.0, disc};

    const FourierCoeffsFull hc = dft(result.h);
    const FourierCoeffsFull lh = apply_ell(hc, eps);
    double res = 0.0;
    for (int m = -fc.band(); m <= fc.band(); ++m) res += std::norm(lh.at(m) - fc.at(m));
    result.residual_l2 = std::sqrt(res);
    return result;
}

K1Functional compute_k1(const PeriodicGridFunction& f, const EpsilonParam& eps) {
    const FourierCoeffsFull fc = project_mean_free(f);
    ExplicitEvaluator fine(fc, eps.value(), 16);
    ExplicitEvaluator coarse(fc, eps.value(), 8);
    return {fine.k1(), std::abs(fine.k1() - coarse.k1())};
}

FourierCoeffsFull solve_galerkin(const FourierCoeffsFull& f, const EpsilonParam& eps, int N) {
    if (f.band() > N)
        throw DimensionError("Galerkin truncation " + std::to_string(N) +
                             " smaller than the data band " + std::to_string(f.band()));
    const double scale = std::max(1.0, l2_norm(f));
    if (std::abs(f.mean()) > 1e-10 * scale)
        throw PreconditionError("Galerkin data must be mean-free");

    const TridiagonalMatrix T = build_aplus(EpsilonParam(eps.value()), N);
    const Cplx i_unit(0.0, 1.0);

    std::vector<Cplx> rhs_pos(static_cast<size_t>(N), Cplx(0.0));
    std::vector<Cplx> rhs_neg(static_cast<size_t>(N), Cplx(0.0));
    for (int m = 1; m <= std::min(N, f.band()); ++m) {
        rhs_pos[static_cast<size_t>(m - 1)] = -i_unit * f.at(m);
        rhs_neg[static_cast<size_t>(m - 1)] = i_unit * f.at(-m);
    }

    TridiagLU<Cplx> lu = shifted_lu(T, Cplx(0.0));
    if (lu.singular())
        throw NumericalError("tridiagonal factorization of A+ broke down");
    lu.solve(rhs_pos);
    lu.solve(rhs_neg);

    FourierCoeffsFull h(N);
    for (int m = 1; m <= N; ++m) {
        h.at(m) = rhs_pos[static_cast<size_t>(m - 1)];
        h.at(-m) = rhs_neg[static_cast<size_t>(m - 1)];
    }
    h.at(0) = 0.0;
    return h;
}

namespace {

double energy_ratio(const FourierCoeffsFull& f, const EpsilonParam& eps, int N) {
    const double fn = l2_norm(f);
    if (fn == 0.0) return 0.0;
    const FourierCoeffsFull h = solve_galerkin(f, eps, N);
    double dn = 0.0;
    Cplx at0(0.0);
    for (int k = -h.band(); k <= h.band(); ++k) {
        dn += static_cast<double>(k) * k * std::norm(h.at(k));
        at0 += h.at(k);
    }
    // h(0) equals the mean-fixing constant of the integral form.
    return std::sqrt(dn) / (std::abs(at0) + fn);
}

} // namespace

EnergyEstimateReport energy_estimate_check(const std::vector<FourierCoeffsFull>& samples,
                                           const EpsilonParam& eps, int N) {
    EnergyEstimateReport rep;
    for (const FourierCoeffsFull& f : samples) {
        rep.max_ratio = std::max(rep.max_ratio, energy_ratio(f, eps, N));
        rep.max_ratio_doubled = std::max(rep.max_ratio_doubled, energy_ratio(f, eps, 2 * N));
    }
    const double base = std::max(rep.max_ratio, 1e-300);
    rep.relative_change = std::abs(rep.max_ratio_doubled - rep.max_ratio) / base;
    return rep;
}

namespace {

/// Column n of the inverse of the doubled section, first N entries.
std::vector<double> inverse_column(const TridiagLU<double>& lu, int n2, int n, int keep) {
    std::vector<double> e(static_cast<size_t>(n2), 0.0);
    e[static_cast<size_t>(n - 1)] = 1.0;
    lu.solve(e);
    e.resize(static_cast<size_t>(keep));
    return e;
}

TridiagLU<double> lu_of_aplus(const EpsilonParam& eps, int dim) {
    const TridiagonalMatrix T = build_aplus(eps, dim);
    std::vector<double> d = T.diag, up = T.super, lo = T.sub;
    return TridiagLU<double>(std::move(d), std::move(up), std::move(lo));
}

} // namespace

DecayFit column_norm_decay(const EpsilonParam& eps, int N) {
    if (N < 8) throw DimensionError("column_norm_decay needs N >= 8");
    const int n2 = 2 * N;
    TridiagLU<double> lu = lu_of_aplus(eps, n2);
    std::vector<double> xs, ys;
    for (int n = std::max(2, N / 8); n <= N / 2; ++n) {
        const std::vector<double> col = inverse_column(lu, n2, n, N);
        double nrm = 0.0;
        for (double v : col) nrm += v * v;
        xs.push_back(n);
        ys.push_back(std::sqrt(nrm));
    }
    DecayFit fit = fit_loglog(xs, ys);
    fit.n_min = static_cast<int>(xs.front());
    fit.n_max = static_cast<int>(xs.back());
    return fit;
}

EntryDecayReport entry_decay(const EpsilonParam& eps, int N) {
    if (N < 16) throw DimensionError("entry_decay needs N >= 16");
    const int n2 = 2 * N;
    TridiagLU<double> lu = lu_of_aplus(eps, n2);
    EntryDecayReport rep;

    const int fixed = 8;
    const int lo = std::min(4 * fixed, N / 2), hi = N / 2;

    // m <= n: row `fixed` across columns n.
    std::vector<double> xs, ys;
    for (int n = lo; n <= hi; ++n) {
        const std::vector<double> col = inverse_column(lu, n2, n, N);
        xs.push_back(n);
        ys.push_back(col[static_cast<size_t>(fixed - 1)]);
    }
    rep.along_row = fit_loglog(xs, ys);
    rep.along_row.n_min = lo;
    rep.along_row.n_max = hi;

    // n < m: column `fixed` down rows m.
    const std::vector<double> col8 = inverse_column(lu, n2, fixed, N);
    xs.clear();
    ys.clear();
    for (int m = lo; m <= hi; ++m) {
        xs.push_back(m);
        ys.push_back(col8[static_cast<size_t>(m - 1)]);
    }
    rep.along_column = fit_loglog(xs, ys);
    rep.along_column.n_min = lo;
    rep.along_column.n_max = hi;

    rep.diagonal_positive = true;
    for (int n = 1; n <= N; ++n) {
        const std::vector<double> col = inverse_column(lu, n2, n, N);
        if (!(col[static_cast<size_t>(n - 1)] > 0.0)) rep.diagonal_positive = false;
    }
    return rep;
}

} // namespace fbheat
