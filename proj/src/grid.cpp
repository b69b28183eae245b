#include "fbheat/grid.hpp"

#include <cmath>
#include <numbers>

namespace fbheat {

namespace {
constexpr double kPi = std::numbers::pi;
}

PeriodicGridFunction::PeriodicGridFunction(std::vector<Cplx> samples)
    : samples_(std::move(samples)) {
    if (samples_.size() < 8)
        throw DimensionError("grid needs at least 8 samples, got " +
                             std::to_string(samples_.size()));
}

PeriodicGridFunction PeriodicGridFunction::zeros(int M) {
    return PeriodicGridFunction(std::vector<Cplx>(static_cast<size_t>(M)));
}

double PeriodicGridFunction::theta(int j) const {
    return -kPi + 2.0 * kPi * j / size();
}

FourierCoeffsFull::FourierCoeffsFull(int band)
    : band_(band), packed_(static_cast<size_t>(2 * band + 1)) {
    if (band < 0) throw DimensionError("negative Fourier band");
}

FourierCoeffsFull::FourierCoeffsFull(int band, std::vector<Cplx> packed)
    : band_(band), packed_(std::move(packed)) {
    if (band < 0 || packed_.size() != static_cast<size_t>(2 * band + 1))
        throw DimensionError("packed coefficient storage must have length 2*band+1");
}

FourierCoeffsFull dft(const PeriodicGridFunction& g) {
    const int M = g.size();
    const int N = M / 2 - 1;
    FourierCoeffsFull c(N);
    for (int k = -N; k <= N; ++k) {
        Cplx acc = 0.0;
        for (int j = 0; j < M; ++j) {
            const double phase = -k * g.theta(j);
            acc += g[j] * Cplx(std::cos(phase), std::sin(phase));
        }
        c.at(k) = acc / static_cast<double>(M);
    }
    return c;
}

PeriodicGridFunction idft(const FourierCoeffsFull& c, int M) {
    if (M < 2 * c.band() + 2)
        throw DimensionError("idft grid size " + std::to_string(M) +
                             " too small for band " + std::to_string(c.band()));
    PeriodicGridFunction g = PeriodicGridFunction::zeros(M);
    for (int j = 0; j < M; ++j) {
        const double theta = g.theta(j);
        Cplx acc = 0.0;
        for (int k = -c.band(); k <= c.band(); ++k)
            acc += c.at(k) * Cplx(std::cos(k * theta), std::sin(k * theta));
        g[j] = acc;
    }
    return g;
}

Cplx eval_fourier(const FourierCoeffsFull& c, double theta) {
    Cplx acc = 0.0;
    for (int k = -c.band(); k <= c.band(); ++k)
        acc += c.at(k) * Cplx(std::cos(k * theta), std::sin(k * theta));
    return acc;
}

FourierCoeffsFull apply_ell(const FourierCoeffsFull& h, const EpsilonParam& eps) {
    const int N = h.band();
    const double e2 = 0.5 * eps.value();
    FourierCoeffsFull out(N + 1);
    auto coeff = [&](int k) -> Cplx { return (std::abs(k) <= N) ? h.at(k) : Cplx(0.0); };
    for (int m = -(N + 1); m <= N + 1; ++m) {
        const double dm = m;
        const Cplx val = dm * coeff(m) + e2 * dm * (dm - 1.0) * coeff(m - 1) -
                         e2 * dm * (dm + 1.0) * coeff(m + 1);
        out.at(m) = Cplx(0.0, 1.0) * val;
    }
    return out;
}

PeriodicGridFunction apply_J(const PeriodicGridFunction& h) {
    const int M = h.size();
    if (M % 2 != 0)
        throw DimensionError("apply_J needs an even grid so that theta -> pi - theta "
                             "maps grid points to grid points");
    PeriodicGridFunction out = PeriodicGridFunction::zeros(M);
    for (int j = 0; j < M; ++j) {
        const int k = ((M / 2 - j) % M + M) % M;
        out[k] = h[j];
    }
    return out;
}

double l2_norm(const PeriodicGridFunction& g) {
    double acc = 0.0;
    for (const Cplx& v : g.samples()) acc += std::norm(v);
    return std::sqrt(acc / g.size());
}

double l2_norm(const FourierCoeffsFull& c) {
    double acc = 0.0;
    for (const Cplx& v : c.packed()) acc += std::norm(v);
    return std::sqrt(acc);
}

double l2_norm(const OneSidedCoeffs& v) {
    double acc = 0.0;
    for (const Cplx& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

Cplx inner(const FourierCoeffsFull& a, const FourierCoeffsFull& b) {
    const int N = std::max(a.band(), b.band());
    Cplx acc = 0.0;
    for (int k = -N; k <= N; ++k) {
        const Cplx av = (std::abs(k) <= a.band()) ? a.at(k) : Cplx(0.0);
        const Cplx bv = (std::abs(k) <= b.band()) ? b.at(k) : Cplx(0.0);
        acc += av * std::conj(bv);
    }
    return acc;
}

Cplx inner(const PeriodicGridFunction& a, const PeriodicGridFunction& b) {
    if (a.size() != b.size())
        throw DimensionError("inner product of grid functions on different grids");
    Cplx acc = 0.0;
    for (int j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc / static_cast<double>(a.size());
}

FourierCoeffsFull one_sided_to_full(const OneSidedCoeffs& v) {
    const int N = static_cast<int>(v.size());
    FourierCoeffsFull c(N);
    for (int k = 1; k <= N; ++k) c.at(k) = v[static_cast<size_t>(k - 1)];
    return c;
}

OneSidedCoeffs positive_part(const FourierCoeffsFull& c) {
    OneSidedCoeffs v(static_cast<size_t>(c.band()));
    for (int k = 1; k <= c.band(); ++k) v[static_cast<size_t>(k - 1)] = c.at(k);
    return v;
}

} // namespace fbheat
