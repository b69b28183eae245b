#include "fbheat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbheat/hqr.hpp"

namespace fbheat {

namespace {

std::vector<Cplx> qr_values(const TridiagonalMatrix& T) {
    DenseMatrix<double> a = densify(T);
    std::vector<double> wr, wi;
    hqr_eigenvalues(a, wr, wi, 60);
    std::vector<Cplx> out(wr.size());
    for (size_t i = 0; i < wr.size(); ++i) out[i] = Cplx(wr[i], wi[i]);
    return out;
}

std::vector<Cplx> qr_values_dd(const Tridiagonal<DD>& T) {
    DenseMatrix<DD> a = densify(T);
    std::vector<DD> wr, wi;
    hqr_eigenvalues(a, wr, wi, 60);
    std::vector<Cplx> out(wr.size());
    for (size_t i = 0; i < wr.size(); ++i) out[i] = Cplx(to_double(wr[i]), to_double(wi[i]));
    return out;
}

double nearest_distance(const Cplx& mu, const std::vector<Cplx>& pool) {
    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& v : pool) best = std::min(best, std::abs(mu - v));
    return best;
}

/// Inverse iteration with a fixed complex shift; returns the best vector
/// found and its residual.  Deterministic start.
std::pair<OneSidedCoeffs, double> inv_iter_complex(const TridiagonalMatrix& T, Cplx mu,
                                                   int iters) {
    const int n = T.n;
    const double scale = tridiag_inf_norm(T);
    OneSidedCoeffs v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 0.25 * std::sin(1.0 + i);
    double nrm = 0.0;
    for (const Cplx& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (Cplx& x : v) x /= nrm;

    Cplx shift = mu;
    OneSidedCoeffs best = v;
    double best_res = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 2; ++attempt) {
        TridiagLU<Cplx> lu = shifted_lu(T, shift);
        if (lu.singular()) {
            shift += Cplx(1e-13 * (1.0 + std::abs(mu)), 0.0);
            continue;
        }
        OneSidedCoeffs w = v;
        for (int it = 0; it < iters; ++it) {
            lu.solve(w);
            double wn = 0.0;
            for (const Cplx& x : w) wn += std::norm(x);
            wn = std::sqrt(wn);
            if (!(wn > 0.0) || !std::isfinite(wn)) break;
            for (Cplx& x : w) x /= wn;
            std::vector<Cplx> tw = tridiag_apply(T, w);
            double res = 0.0;
            for (size_t i = 0; i < w.size(); ++i) res += std::norm(tw[i] - mu * w[i]);
            res = std::sqrt(res) / scale;
            if (res < best_res) {
                best_res = res;
                best = w;
            }
            if (res <= 1e-14) break;
        }
        if (best_res <= 1e-11) break;
        shift += Cplx(1e-13 * (1.0 + std::abs(mu)), 0.0);
    }
    return {best, best_res};
}

template <class Real>
struct RefineResult {
    Real mu{};
    std::vector<Real> vec;
    Real resid_rel{};
    bool ok = false;
};

template <class Real>
Real refine_accept_tol();
template <>
double refine_accept_tol<double>() { return 1e-11; }
template <>
DD refine_accept_tol<DD>() { return DD(1e-22); }

/// Shift-and-invert refinement of a real eigenpair in the working precision.
/// The seed comes from a double QR run; a few fixed-shift steps lock onto the
/// nearby eigenvector, then Rayleigh-quotient updates polish the pair.
template <class Real>
RefineResult<Real> refine_eigenpair(const Tridiagonal<Real>& T, double seed) {
    const int n = T.n;
    const Real scale = tridiag_inf_norm(T);
    RefineResult<Real> out;
    std::vector<Real> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = Real(1.0 + 0.25 * std::sin(1.0 + i));
    Real nrm(0);
    for (const Real& x : v) nrm += x * x;
    nrm = sqrt(nrm);
    for (Real& x : v) x /= nrm;

    Real mu(seed);
    Real best_res = Real(std::numeric_limits<double>::max());
    const Real floor_tol = Real(100) * num_eps<Real>();
    for (int it = 0; it < 40; ++it) {
        Real shift = mu;
        TridiagLU<Real> lu = shifted_lu(T, shift);
        if (lu.singular()) {
            shift += Real(1e-13) * (Real(1) + abs(mu));
            lu = shifted_lu(T, shift);
            if (lu.singular()) break;
        }
        lu.solve(v);
        Real vn(0);
        for (const Real& x : v) vn += x * x;
        vn = sqrt(vn);
        if (!(vn > Real(0))) break;
        for (Real& x : v) x /= vn;
        std::vector<Real> tv = tridiag_apply(T, v);
        Real rq(0);
        for (size_t i = 0; i < v.size(); ++i) rq += tv[i] * v[i];
        Real res(0);
        for (size_t i = 0; i < v.size(); ++i) {
            const Real d = tv[i] - rq * v[i];
            res += d * d;
        }
        res = sqrt(res) / scale;
        if (it >= 3) mu = rq; // start Rayleigh updates once locked on
        if (res < best_res) {
            best_res = res;
            out.mu = rq;
            out.vec = v;
            out.resid_rel = res;
        }
        if (res <= floor_tol) break;
    }
    out.ok = out.resid_rel <= refine_accept_tol<Real>();
    return out;
}

void assign_gaps(std::vector<SpectrumRecord>& records) {
    std::vector<Cplx> all, stab;
    for (const auto& r : records) {
        all.push_back(r.mu);
        if (r.stabilized) stab.push_back(r.mu);
    }
    for (auto& r : records) {
        const std::vector<Cplx>& pool = (r.stabilized && stab.size() > 1) ? stab : all;
        double best = std::numeric_limits<double>::infinity();
        int hits = 0;
        for (const Cplx& v : pool) {
            const double d = std::abs(r.mu - v);
            if (d == 0.0 && hits == 0) {
                ++hits; // skip self once
                continue;
            }
            best = std::min(best, d);
        }
        r.gap_to_nearest = best;
    }
}

void sort_records(std::vector<SpectrumRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.mu.real() != b.mu.real()) return a.mu.real() < b.mu.real();
        return a.mu.imag() < b.mu.imag();
    });
}

} // namespace

int Spectrum::n_stabilized() const {
    int c = 0;
    for (const auto& r : records) c += r.stabilized ? 1 : 0;
    return c;
}

std::vector<Cplx> Spectrum::stabilized_values() const {
    std::vector<Cplx> out;
    for (const auto& r : records)
        if (r.stabilized) out.push_back(r.mu);
    return out;
}

std::vector<Cplx> eigenvalues_qr(const TridiagonalMatrix& T) { return qr_values(T); }

double eigenpair_residual(const TridiagonalMatrix& T, const OneSidedCoeffs& v, Cplx mu) {
    std::vector<Cplx> tv = tridiag_apply(T, v);
    double res = 0.0, nrm = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        res += std::norm(tv[i] - mu * v[i]);
        nrm += std::norm(v[i]);
    }
    return std::sqrt(res / std::max(nrm, 1e-300)) / tridiag_inf_norm(T);
}

OneSidedCoeffs eigenvector(const TridiagonalMatrix& T, Cplx mu) {
    auto [v, res] = inv_iter_complex(T, mu, 6);
    if (!(res <= 1e-10))
        throw NumericalError("inverse iteration residual " + std::to_string(res) +
                             " exceeds 1e-10 for shift re=" + std::to_string(mu.real()));
    return v;
}

Spectrum stabilized_spectrum(const EpsilonParam& eps, int N, Precision mode) {
    if (N < 1) throw DimensionError("truncation must be >= 1");
    Spectrum spec;
    spec.truncation = N;
    spec.epsilon = eps.value();
    spec.precision_mode = mode;

    const TridiagonalMatrix T = build_aplus(eps, N);
    const TridiagonalMatrix T2 = build_aplus(eps, 2 * N);

    std::vector<Cplx> vals_n, vals_2n;
    const bool dd_qr_feasible = N <= 128;
    if (mode == Precision::extended && dd_qr_feasible) {
        vals_n = qr_values_dd(build_aplus_t<DD>(eps.value(), N));
        vals_2n = qr_values_dd(build_aplus_t<DD>(eps.value(), 2 * N));
    } else {
        vals_n = qr_values(T);
        vals_2n = qr_values(T2);
    }

    std::vector<SpectrumRecord> records;
    records.reserve(vals_n.size());

    if (mode == Precision::extended && !dd_qr_feasible) {
        // Seeds from double QR, polished in DD at both truncations.
        const Tridiagonal<DD> Td = build_aplus_t<DD>(eps.value(), N);
        const Tridiagonal<DD> Td2 = build_aplus_t<DD>(eps.value(), 2 * N);
        for (const Cplx& seed : vals_n) {
            SpectrumRecord r;
            const bool realish = std::abs(seed.imag()) <= 1e-3 * (1.0 + std::abs(seed));
            if (realish) {
                RefineResult<DD> a = refine_eigenpair(Td, seed.real());
                RefineResult<DD> b = refine_eigenpair(Td2, seed.real());
                if (a.ok && b.ok) {
                    r.mu = Cplx(to_double(a.mu), 0.0);
                    r.residual = to_double(a.resid_rel);
                    r.stabilized =
                        to_double(abs(a.mu - b.mu)) <= kMatchTol * (1.0 + to_double(abs(a.mu)));
                    records.push_back(r);
                    continue;
                }
            }
            r.mu = seed;
            auto [v, res] = inv_iter_complex(T, seed, 4);
            (void)v;
            r.residual = res;
            r.stabilized = nearest_distance(seed, vals_2n) <= kMatchTol * (1.0 + std::abs(seed));
            records.push_back(r);
        }
    } else {
        for (const Cplx& mu : vals_n) {
            SpectrumRecord r;
            r.mu = mu;
            r.stabilized = nearest_distance(mu, vals_2n) <= kMatchTol * (1.0 + std::abs(mu));
            auto [v, res] = inv_iter_complex(T, mu, 4);
            (void)v;
            r.residual = res;
            records.push_back(r);
        }
    }

    sort_records(records);
    spec.records = std::move(records);
    assign_gaps(spec.records);
    if (spec.n_stabilized() == 0)
        throw NumericalError("no eigenvalue stabilized between truncations " + std::to_string(N) +
                             " and " + std::to_string(2 * N) +
                             "; increase the truncation or the precision");
    return spec;
}

namespace {

template <class Real>
std::vector<Eigenpair<Real>> lowest_eigenpairs_impl(const EpsilonParam& eps, int N, int count) {
    if (count < 1) return {};
    const TridiagonalMatrix T = build_aplus(eps, N);
    std::vector<Cplx> seeds = qr_values(T);
    std::sort(seeds.begin(), seeds.end(),
              [](const Cplx& a, const Cplx& b) { return a.real() < b.real(); });

    const Tridiagonal<Real> Tr = build_aplus_t<Real>(eps.value(), N);
    const Tridiagonal<Real> Tr2 = build_aplus_t<Real>(eps.value(), 2 * N);

    std::vector<Eigenpair<Real>> out;
    for (const Cplx& seed : seeds) {
        if (static_cast<int>(out.size()) >= count) break;
        if (std::abs(seed.imag()) > 1e-3 * (1.0 + std::abs(seed))) continue;
        if (seed.imag() < 0.0) continue; // conjugate partner of a near-real pair
        RefineResult<Real> a = refine_eigenpair(Tr, seed.real());
        if (!a.ok) continue;
        // Skip if this refined value duplicates an earlier one (Rayleigh
        // iteration jumped basins).
        bool dup = false;
        for (const auto& p : out)
            if (to_double(abs(p.mu - a.mu)) <= 1e-10 * (1.0 + to_double(abs(a.mu)))) dup = true;
        if (dup) continue;
        RefineResult<Real> b = refine_eigenpair(Tr2, to_double(a.mu));
        Eigenpair<Real> pair;
        pair.mu = a.mu;
        pair.vec = std::move(a.vec);
        pair.residual = to_double(a.resid_rel);
        pair.stabilized =
            b.ok && to_double(abs(a.mu - b.mu)) <= kMatchTol * (1.0 + to_double(abs(a.mu)));
        out.push_back(std::move(pair));
    }
    std::sort(out.begin(), out.end(),
              [](const Eigenpair<Real>& a, const Eigenpair<Real>& b) { return a.mu < b.mu; });
    return out;
}

} // namespace

std::vector<Eigenpair<double>> lowest_eigenpairs(const EpsilonParam& eps, int N, int count) {
    return lowest_eigenpairs_impl<double>(eps, N, count);
}

std::vector<Eigenpair<DD>> lowest_eigenpairs_dd(const EpsilonParam& eps, int N, int count) {
    return lowest_eigenpairs_impl<DD>(eps, N, count);
}

} // namespace fbheat
