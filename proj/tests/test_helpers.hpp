#pragma once

#include <complex>
#include <random>
#include <vector>

#include "fbheat/grid.hpp"

namespace fbheat::testutil {

inline FourierCoeffsFull random_coeffs(int band, std::mt19937_64& rng, bool mean_free = false) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FourierCoeffsFull c(band);
    for (int k = -band; k <= band; ++k) c.at(k) = Cplx(gauss(rng), gauss(rng));
    if (mean_free) c.at(0) = 0.0;
    return c;
}

inline OneSidedCoeffs random_unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    OneSidedCoeffs v(static_cast<size_t>(n));
    double nrm = 0.0;
    for (auto& x : v) {
        x = Cplx(gauss(rng), gauss(rng));
        nrm += std::norm(x);
    }
    nrm = std::sqrt(nrm);
    for (auto& x : v) x /= nrm;
    return v;
}

inline PeriodicGridFunction sample_function(int M, const std::function<Cplx(double)>& f) {
    PeriodicGridFunction g = PeriodicGridFunction::zeros(M);
    for (int j = 0; j < M; ++j) g[j] = f(g.theta(j));
    return g;
}

inline double max_coeff_diff(const FourierCoeffsFull& a, const FourierCoeffsFull& b) {
    const int band = std::max(a.band(), b.band());
    double worst = 0.0;
    for (int k = -band; k <= band; ++k) {
        const Cplx av = std::abs(k) <= a.band() ? a.at(k) : Cplx(0.0);
        const Cplx bv = std::abs(k) <= b.band() ? b.at(k) : Cplx(0.0);
        worst = std::max(worst, std::abs(av - bv));
    }
    return worst;
}

} // namespace fbheat::testutil
