#include "fbheat/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace fbheat {

namespace {

FourierCoeffsFull random_band_limited(int band, std::mt19937_64& rng, bool mean_free) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FourierCoeffsFull c(band);
    for (int k = -band; k <= band; ++k) c.at(k) = Cplx(gauss(rng), gauss(rng));
    if (mean_free) c.at(0) = 0.0;
    return c;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

} // namespace

VerifyReport run_verification(const VerifyConfig& cfg) {
    VerifyReport rep;
    const EpsilonParam eps(cfg.epsilon);
    const int N = std::max(cfg.truncation, 32);
    std::mt19937_64 rng(20240901ULL);

    auto check = [&rep](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
        VerifyCheck c;
        c.name = name;
        try {
            auto [pass, detail] = fn();
            c.pass = pass;
            c.detail = detail;
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        rep.checks.push_back(std::move(c));
    };

    // ---- grid ----------------------------------------------------------
    check("grid/kernel_constants", [&]() -> std::pair<bool, std::string> {
        FourierCoeffsFull one(0);
        one.at(0) = 1.0;
        const FourierCoeffsFull out = apply_ell(one, eps);
        return {l2_norm(out) == 0.0, "||ell[1]|| = " + num(l2_norm(out))};
    });
    check("grid/mean_annihilation", [&]() -> std::pair<bool, std::string> {
        double worst = 0.0;
        for (int rep_i = 0; rep_i < 16; ++rep_i) {
            const FourierCoeffsFull h = random_band_limited(16, rng, false);
            worst = std::max(worst, std::abs(apply_ell(h, eps).mean()));
        }
        return {worst == 0.0, "max mode-0 output = " + num(worst)};
    });
    check("grid/adjoint_symmetry", [&]() -> std::pair<bool, std::string> {
        // (L h, g) = (h, J L J g) evaluated spectrally through the grid J.
        double worst = 0.0;
        for (int rep_i = 0; rep_i < 8; ++rep_i) {
            const FourierCoeffsFull h = random_band_limited(12, rng, false);
            const FourierCoeffsFull g = random_band_limited(12, rng, false);
            const int M = 64;
            const Cplx lhs = inner(apply_ell(h, eps), g);
            const PeriodicGridFunction jg = apply_J(idft(g, M));
            const FourierCoeffsFull ljg = apply_ell(dft(jg), eps);
            const PeriodicGridFunction jljg = apply_J(idft(ljg, 2 * M));
            const Cplx rhs = inner(idft(h, 2 * M), jljg);
            const double scale = std::max(1.0, std::abs(lhs));
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        return {worst < 1e-10, "max relative defect = " + num(worst)};
    });
    check("grid/block_invariance", [&]() -> std::pair<bool, std::string> {
        FourierCoeffsFull h = random_band_limited(16, rng, false);
        for (int k = -16; k <= 0; ++k) h.at(k) = 0.0;
        const FourierCoeffsFull out = apply_ell(h, eps);
        double leak = 0.0;
        for (int k = -out.band(); k <= 0; ++k) leak += std::abs(out.at(k));
        return {leak == 0.0, "negative/zero-mode leakage = " + num(leak)};
    });

    // ---- operator --------------------------------------------------------
    check("operator/entry_formulas", [&]() -> std::pair<bool, std::string> {
        const TridiagonalMatrix T = build_aplus(eps, N);
        bool ok = true;
        for (int m = 1; m <= N; ++m) ok = ok && T.diag[static_cast<size_t>(m - 1)] == m;
        for (int m = 1; m < N; ++m) {
            const double w = 0.5 * cfg.epsilon * m * (m + 1);
            ok = ok && T.super[static_cast<size_t>(m - 1)] == -w &&
                 T.sub[static_cast<size_t>(m - 1)] == w;
        }
        return {ok, "exact entry match"};
    });
    check("operator/quadratic_form_identity", [&]() -> std::pair<bool, std::string> {
        const TridiagonalMatrix T = build_aplus(eps, N);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0.0;
        for (int s = 0; s < 64; ++s) {
            OneSidedCoeffs v(static_cast<size_t>(N));
            double n2 = 0.0;
            for (auto& x : v) {
                x = Cplx(gauss(rng), gauss(rng));
                n2 += std::norm(x);
            }
            double expect = 0.0;
            for (int m = 1; m <= N; ++m) expect += m * std::norm(v[static_cast<size_t>(m - 1)]);
            const double got = quadratic_form_re(T, v);
            worst = std::max(worst, std::abs(got - expect) / expect);
        }
        return {worst < 1e-12, "max relative deviation = " + num(worst)};
    });
    check("operator/dissipativity", [&]() -> std::pair<bool, std::string> {
        const auto drep = dissipativity_report(build_aplus(eps, N), 200);
        const bool ok = drep.structural_pass && drep.min_quadratic_form >= 1.0 - 1e-12;
        return {ok, "min Re<Av,v> = " + num(drep.min_quadratic_form)};
    });
    check("operator/spectrum_mirror", [&]() -> std::pair<bool, std::string> {
        const auto ep = eigenvalues_qr(build_aplus(eps, 8));
        auto em = eigenvalues_qr(build_aminus(eps, 8));
        double worst = 0.0;
        for (const Cplx& mu : ep) {
            double best = 1e300;
            for (const Cplx& nu : em) best = std::min(best, std::abs(mu + nu));
            worst = std::max(worst, best);
        }
        return {worst < 1e-8, "max mirror defect = " + num(worst)};
    });

    // ---- invsolve ----------------------------------------------------------
    check("invsolve/manufactured_solution", [&]() -> std::pair<bool, std::string> {
        const int M = 256;
        PeriodicGridFunction f = PeriodicGridFunction::zeros(M);
        PeriodicGridFunction exact = PeriodicGridFunction::zeros(M);
        for (int j = 0; j < M; ++j) {
            const double th = f.theta(j);
            f[j] = -cfg.epsilon * std::sin(2 * th) - std::sin(th);
            exact[j] = std::cos(th);
        }
        const auto sol = solve_explicit(f, eps);
        double emax = 0.0;
        for (int j = 0; j < M; ++j) emax = std::max(emax, std::abs(sol.h[j] - exact[j]));
        FourierCoeffsFull fc = dft(f);
        const FourierCoeffsFull hg = solve_galerkin(fc, eps, 8);
        const double g_err = std::abs(hg.at(1) - 0.5) + std::abs(hg.at(-1) - 0.5);
        const bool ok = emax < 1e-8 && g_err < 1e-13;
        return {ok, "explicit max err " + num(emax) + ", galerkin err " + num(g_err)};
    });
    check("invsolve/two_solver_agreement", [&]() -> std::pair<bool, std::string> {
        const int band = 8, M = 128;
        const FourierCoeffsFull fc = random_band_limited(band, rng, true);
        const PeriodicGridFunction f = idft(fc, M);
        const auto ex = solve_explicit(f, eps);
        const FourierCoeffsFull hg = solve_galerkin(fc, eps, 48);
        const PeriodicGridFunction hgal = idft(hg, M);
        double diff = 0.0;
        for (int j = 0; j < M; ++j) diff = std::max(diff, std::abs(ex.h[j] - hgal[j]));
        const double rel = diff / std::max(1e-300, l2_norm(f));
        return {rel < 1e-5, "max pointwise gap / ||f|| = " + num(rel)};
    });
    check("invsolve/galerkin_residual", [&]() -> std::pair<bool, std::string> {
        const FourierCoeffsFull fc = random_band_limited(12, rng, true);
        const FourierCoeffsFull h = solve_galerkin(fc, eps, 32);
        const FourierCoeffsFull lh = apply_ell(h, eps);
        double res = 0.0;
        for (int m = -32; m <= 32; ++m)
            res += std::norm(lh.at(m) - (std::abs(m) <= fc.band() ? fc.at(m) : Cplx(0.0)));
        const double rel = std::sqrt(res) / l2_norm(fc);
        return {rel < 1e-12, "retained-mode residual = " + num(rel)};
    });

    // ---- spectrum ----------------------------------------------------------
    check("spectrum/trace_identity", [&]() -> std::pair<bool, std::string> {
        const auto vals = eigenvalues_qr(build_aplus(eps, N));
        Cplx sum(0.0);
        for (const Cplx& v : vals) sum += v;
        const double expect = 0.5 * static_cast<double>(N) * (N + 1);
        const double rel = std::abs(sum - expect) / expect;
        return {rel < 1e-9, "relative trace defect = " + num(rel)};
    });
    check("spectrum/field_of_values", [&]() -> std::pair<bool, std::string> {
        const auto vals = eigenvalues_qr(build_aplus(eps, N));
        double lowest = 1e300;
        for (const Cplx& v : vals) lowest = std::min(lowest, v.real());
        const double floor = 1.0 - 1e-9 * N * N;
        return {lowest >= floor, "min Re mu = " + num(lowest)};
    });
    check("spectrum/stabilized_reality_simplicity", [&]() -> std::pair<bool, std::string> {
        const Spectrum spec = stabilized_spectrum(eps, N, cfg.precision);
        double max_im = 0.0, max_mu = 0.0;
        double min_gap = 1e300, min_re = 1e300;
        for (const auto& r : spec.records) {
            if (!r.stabilized) continue;
            max_im = std::max(max_im, std::abs(r.mu.imag()) / std::abs(r.mu));
            max_mu = std::max(max_mu, std::abs(r.mu));
            min_gap = std::min(min_gap, r.gap_to_nearest);
            min_re = std::min(min_re, r.mu.real());
        }
        const bool ok = spec.n_stabilized() >= 3 && max_im < kRealityTol && min_re >= 1.0 &&
                        min_gap > 1e-6 * max_mu;
        return {ok, std::to_string(spec.n_stabilized()) + " stabilized, max |Im|/|mu| = " +
                        num(max_im) + ", min gap = " + num(min_gap)};
    });

    // ---- sturm -------------------------------------------------------------
    check("sturm/assembly_structure", [&]() -> std::pair<bool, std::string> {
        const SLDiscretization d = sl_assemble(eps, std::max(64, cfg.mesh_elements / 8));
        bool mass_pos = true;
        for (double v : d.Mass.diag) mass_pos = mass_pos && v > 0.0;
        // Interior stiffness rows sum to zero against constants.
        double worst = 0.0;
        for (int i = 1; i + 1 < d.K.n; ++i) {
            const double row = d.K.sub[static_cast<size_t>(i - 1)] +
                               d.K.diag[static_cast<size_t>(i)] +
                               d.K.super[static_cast<size_t>(i)];
            worst = std::max(worst, std::abs(row) / std::abs(d.K.diag[static_cast<size_t>(i)]));
        }
        return {mass_pos && worst < 1e-12, "max scaled row sum = " + num(worst)};
    });
    check("sturm/nonnegative_eigenvalues", [&]() -> std::pair<bool, std::string> {
        const SLDiscretization d = sl_assemble(eps, std::max(64, cfg.mesh_elements / 4));
        const auto mu = sl_eigenvalues(d, 5);
        return {mu.front() >= -1e-10, "smallest = " + num(mu.front())};
    });
    check("sturm/cross_check", [&]() -> std::pair<bool, std::string> {
        const auto chk = cross_check(eps, std::max(N, 96), 3, cfg.mesh_elements, cfg.precision);
        return {chk.max_rel_diff < 1e-3, "max relative difference = " + num(chk.max_rel_diff)};
    });

    // ---- diagnostics ---------------------------------------------------------
    check("diagnostics/svd_frobenius", [&]() -> std::pair<bool, std::string> {
        std::normal_distribution<double> gauss(0.0, 1.0);
        DenseMatrix<double> A(20, 20);
        double fro2 = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                A(i, j) = gauss(rng);
                fro2 += A(i, j) * A(i, j);
            }
        const auto sv = singular_values(A);
        double sum2 = 0.0;
        for (double s : sv) sum2 += s * s;
        const double rel = std::abs(sum2 - fro2) / fro2;
        return {rel < 1e-10, "Frobenius defect = " + num(rel)};
    });
    check("diagnostics/orthonormal_angles", [&]() -> std::pair<bool, std::string> {
        std::vector<OneSidedCoeffs> vecs;
        for (int j = 0; j < 4; ++j) {
            OneSidedCoeffs v(6, Cplx(0.0));
            v[static_cast<size_t>(j)] = 1.0;
            vecs.push_back(v);
        }
        const auto r = subspace_angles(vecs);
        bool ok = true;
        for (double a : r.angles) ok = ok && std::abs(a - std::asin(1.0)) < 1e-14;
        for (size_t i = 0; i + 1 < r.gram_condition.size(); ++i)
            ok = ok && r.gram_condition[i] <= r.gram_condition[i + 1] + 1e-12;
        return {ok, "angles at pi/2, conditions monotone"};
    });
    check("diagnostics/gram_growth", [&]() -> std::pair<bool, std::string> {
        const auto r = riesz_diagnostics(eps, 13, std::min(2 * N, 192), cfg.precision);
        const double growth = r.gram_condition[11] / r.gram_condition[4];
        bool decreasing = true;
        for (size_t i = 4; i + 1 < std::min<size_t>(r.angles.size(), 12); ++i)
            decreasing = decreasing && r.angles[i + 1] < r.angles[i];
        return {growth > 10.0 && decreasing,
                "cond growth 5->12 = " + num(growth) + (decreasing ? ", angles decreasing"
                                                                   : ", angles NOT decreasing")};
    });
    check("diagnostics/completeness_monotone", [&]() -> std::pair<bool, std::string> {
        const int trunc = std::min(2 * N, 192);
        std::vector<double> target(static_cast<size_t>(trunc));
        for (int k = 1; k <= trunc; ++k)
            target[static_cast<size_t>(k - 1)] = std::pow(k, -4.0);
        const auto res = completeness_diagnostics(eps, target, 12, trunc, cfg.precision);
        bool mono = true;
        for (size_t i = 0; i + 1 < res.size(); ++i) mono = mono && res[i + 1] <= res[i] * (1 + 1e-12);
        return {mono && res.back() < res.front(),
                "residual " + num(res.front()) + " -> " + num(res.back())};
    });

    // ---- evolve ---------------------------------------------------------------
    check("evolve/identity_at_t0", [&]() -> std::pair<bool, std::string> {
        const FourierCoeffsFull h0 = random_band_limited(12, rng, false);
        const FourierCoeffsFull h1 = propagate(h0, eps, 16, 0.0);
        double diff = 0.0;
        for (int k = -12; k <= 12; ++k) diff = std::max(diff, std::abs(h1.at(k) - h0.at(k)));
        return {diff < 1e-14, "max deviation = " + num(diff)};
    });
    check("evolve/semigroup", [&]() -> std::pair<bool, std::string> {
        const FourierCoeffsFull h0 = random_band_limited(12, rng, false);
        const FourierCoeffsFull a = propagate(h0, eps, 24, 0.7);
        const FourierCoeffsFull b = propagate(propagate(h0, eps, 24, 0.3), eps, 24, 0.4);
        double diff = 0.0, scale = 0.0;
        for (int k = -24; k <= 24; ++k) {
            diff += std::norm(a.at(k) - b.at(k));
            scale += std::norm(a.at(k));
        }
        const double rel = std::sqrt(diff / scale);
        return {rel < 1e-9, "relative gap = " + num(rel)};
    });
    check("evolve/energy_derivative", [&]() -> std::pair<bool, std::string> {
        const int n = 16;
        const FourierCoeffsFull h0 = random_band_limited(n, rng, false);
        const double dt = 1e-5;
        const double n0 = l2_norm(propagate(h0, eps, n, 0.0));
        const double n1 = l2_norm(propagate(h0, eps, n, dt));
        const double fd = (n1 * n1 - n0 * n0) / dt;
        // d/dt ||v||^2 at 0 on the positive/negative blocks.
        const TridiagonalMatrix T = build_aplus(eps, n);
        OneSidedCoeffs vp = positive_part(h0);
        OneSidedCoeffs vm(static_cast<size_t>(n));
        for (int k = 1; k <= n; ++k) vm[static_cast<size_t>(k - 1)] = h0.at(-k);
        auto im_form = [&](const OneSidedCoeffs& v, double sign) {
            const auto tv = apply(T, v);
            double acc = 0.0;
            for (size_t i = 0; i < v.size(); ++i) acc += (tv[i] * std::conj(v[i])).imag() * sign;
            return acc;
        };
        const double expect = 2.0 * (im_form(vp, 1.0) + im_form(vm, -1.0));
        const double rel = std::abs(fd - expect) / std::max(1.0, std::abs(expect));
        return {rel < 1e-3, "finite-difference vs form = " + num(rel)};
    });
    check("evolve/norm_growth", [&]() -> std::pair<bool, std::string> {
        const auto repg = propagator_norm_growth(eps, 1.0, {8, 16, 32});
        const bool inc = repg.operator_norms[0] < repg.operator_norms[1] &&
                         repg.operator_norms[1] < repg.operator_norms[2];
        return {inc, "norms " + num(repg.operator_norms[0]) + " -> " +
                         num(repg.operator_norms[2])};
    });

    return rep;
}

} // namespace fbheat
