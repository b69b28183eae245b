#include "fbheat/evolve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fbheat/jacobi_svd.hpp"
#include "fbheat/tridiagonal.hpp"

namespace fbheat {

namespace {

using EMat = Eigen::MatrixXcd;

/// Pade(13) scaling-and-squaring (1-norm based scaling).
EMat expm_pade13(EMat A) {
    static const double b[14] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};
    static const double theta13 = 5.371920351148152;

    const int n = static_cast<int>(A.rows());
    const double nrm = A.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    if (s > 64)
        throw NumericalError("matrix exponential scaling exponent " + std::to_string(s) +
                             " exceeds the cap; evolve over a smaller time step");
    if (s > 0) A *= std::pow(2.0, -s);

    const EMat I = EMat::Identity(n, n);
    const EMat A2 = A * A;
    const EMat A4 = A2 * A2;
    const EMat A6 = A2 * A4;
    const EMat U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
             b[1] * I);
    const EMat V =
        A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    EMat F = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < s; ++k) F = F * F;
    return F;
}

EMat dense_aplus_times(const EpsilonParam& eps, int N, Cplx factor) {
    const TridiagonalMatrix T = build_aplus(eps, N);
    EMat A = EMat::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        A(i, i) = factor * T.diag[static_cast<size_t>(i)];
        if (i + 1 < N) {
            A(i, i + 1) = factor * T.super[static_cast<size_t>(i)];
            A(i + 1, i) = factor * T.sub[static_cast<size_t>(i)];
        }
    }
    return A;
}

} // namespace

DenseMatrix<Cplx> propagator_matrix(const EpsilonParam& eps, int N, double t) {
    if (N < 1) throw DimensionError("propagator needs N >= 1");
    if (t < 0.0) throw DomainError("propagation time must be >= 0");
    const EMat E = expm_pade13(dense_aplus_times(eps, N, Cplx(0.0, -t)));
    DenseMatrix<Cplx> out(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out(i, j) = E(i, j);
    return out;
}

FourierCoeffsFull propagate(const FourierCoeffsFull& h0, const EpsilonParam& eps, int N,
                            double t) {
    if (t < 0.0) throw DomainError("propagation time must be >= 0");
    if (h0.band() > N)
        throw DimensionError("initial band " + std::to_string(h0.band()) +
                             " exceeds the truncation " + std::to_string(N));
    const EMat E = expm_pade13(dense_aplus_times(eps, N, Cplx(0.0, -t)));

    Eigen::VectorXcd vp = Eigen::VectorXcd::Zero(N), vm = Eigen::VectorXcd::Zero(N);
    for (int k = 1; k <= h0.band(); ++k) {
        vp(k - 1) = h0.at(k);
        vm(k - 1) = h0.at(-k);
    }
    // Negative block: w' = -i A_- w with A_- = -A_+, hence w(t) = conj(E) w(0)
    // for the real section.
    const Eigen::VectorXcd wp = E * vp;
    const Eigen::VectorXcd wm = E.conjugate() * vm;

    FourierCoeffsFull out(N);
    out.at(0) = h0.mean();
    for (int k = 1; k <= N; ++k) {
        out.at(k) = wp(k - 1);
        out.at(-k) = wm(k - 1);
    }
    return out;
}

PeriodicGridFunction harmonic_solution(const std::vector<std::pair<double, OneSidedCoeffs>>& pairs,
                                       const std::vector<Cplx>& coeffs, double t, int grid_size) {
    if (pairs.size() != coeffs.size())
        throw DimensionError("harmonic_solution: one coefficient per eigenpair required");
    if (pairs.empty()) return PeriodicGridFunction::zeros(grid_size);
    const size_t n = pairs.front().second.size();
    FourierCoeffsFull acc(static_cast<int>(n));
    for (size_t j = 0; j < pairs.size(); ++j) {
        if (pairs[j].second.size() != n)
            throw DimensionError("harmonic_solution: eigenvectors of mixed truncations");
        const Cplx phase = std::exp(Cplx(0.0, -pairs[j].first * t)) * coeffs[j];
        for (size_t k = 0; k < n; ++k)
            acc.at(static_cast<int>(k) + 1) += phase * pairs[j].second[k];
    }
    return idft(acc, grid_size);
}

PropagatorReport propagator_norm_growth(const EpsilonParam& eps, double t,
                                        const std::vector<int>& truncations) {
    PropagatorReport rep;
    rep.time = t;
    rep.epsilon = eps.value();
    for (size_t i = 0; i < truncations.size(); ++i) {
        const int N = truncations[i];
        if (N < 8) throw DimensionError("propagator truncations must be >= 8");
        if (i > 0 && N <= truncations[i - 1])
            throw DimensionError("propagator truncations must increase");
        const auto sv = jacobi_singular_values(propagator_matrix(eps, N, t));
        rep.truncations.push_back(N);
        rep.operator_norms.push_back(sv.front());
    }
    for (size_t i = 0; i + 1 < rep.operator_norms.size(); ++i)
        rep.growth_ratios.push_back(rep.operator_norms[i + 1] / rep.operator_norms[i]);
    return rep;
}

double sobolev_norm(const FourierCoeffsFull& h, double s) {
    double acc = 0.0;
    for (int k = -h.band(); k <= h.band(); ++k)
        acc += std::pow(1.0 + static_cast<double>(k) * k, s) * std::norm(h.at(k));
    return std::sqrt(acc);
}

FourierCoeffsFull algebraic_decay_data(double s, int band, unsigned long long seed) {
    if (band < 1) throw DimensionError("decay data needs band >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    FourierCoeffsFull h(band);
    for (int k = 1; k <= band; ++k) {
        const double mag = std::pow(static_cast<double>(k), -s);
        const double ph = phase(rng);
        h.at(k) = mag * Cplx(std::cos(ph), std::sin(ph));
        // Real-valued data: conjugate symmetry.
        h.at(-k) = std::conj(h.at(k));
    }
    return h;
}

} // namespace fbheat
