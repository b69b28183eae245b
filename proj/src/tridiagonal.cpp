#include "fbheat/tridiagonal.hpp"

#include <cmath>
#include <random>

namespace fbheat {

TridiagonalMatrix build_aplus(const EpsilonParam& eps, int N) {
    return build_aplus_t<double>(eps.value(), N);
}

TridiagonalMatrix build_aminus(const EpsilonParam& eps, int N) {
    TridiagonalMatrix T = build_aplus(eps, N);
    for (double& v : T.diag) v = -v;
    for (double& v : T.super) v = -v;
    for (double& v : T.sub) v = -v;
    return T;
}

OneSidedCoeffs apply(const TridiagonalMatrix& T, const OneSidedCoeffs& v) {
    return tridiag_apply(T, v);
}

double quadratic_form_re(const TridiagonalMatrix& T, const OneSidedCoeffs& v) {
    const OneSidedCoeffs tv = apply(T, v);
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) acc += (tv[i] * std::conj(v[i])).real();
    return acc;
}

DissipativityReport dissipativity_report(const TridiagonalMatrix& T, int samples,
                                         unsigned long long seed) {
    DissipativityReport rep;
    rep.samples = samples;

    rep.structural_pass = true;
    for (size_t i = 0; i + 1 < static_cast<size_t>(T.n); ++i) {
        if (T.super[i] + T.sub[i] != 0.0) rep.structural_pass = false;
    }
    for (int i = 0; i < T.n; ++i) {
        const double d = T.diag[static_cast<size_t>(i)];
        if (!(d > 0.0) || (i > 0 && !(d > T.diag[static_cast<size_t>(i - 1)])))
            rep.structural_pass = false;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double min_form = std::numeric_limits<double>::infinity();
    OneSidedCoeffs v(static_cast<size_t>(T.n));
    for (int s = 0; s < samples; ++s) {
        double nrm2 = 0.0;
        for (Cplx& x : v) {
            x = Cplx(gauss(rng), gauss(rng));
            nrm2 += std::norm(x);
        }
        const double scale = 1.0 / std::sqrt(nrm2);
        for (Cplx& x : v) x *= scale;
        min_form = std::min(min_form, quadratic_form_re(T, v));
    }
    rep.min_quadratic_form = samples > 0 ? min_form : 0.0;
    return rep;
}

} // namespace fbheat
