#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "fbheat/hqr.hpp"
#include "fbheat/spectrum.hpp"

using namespace fbheat;

TEST_CASE("QR eigenvalues: 1x1 section") {
    const auto vals = eigenvalues_qr(build_aplus(EpsilonParam(0.4), 1));
    REQUIRE(vals.size() == 1);
    CHECK(std::abs(vals[0] - 1.0) < 1e-15);
}

TEST_CASE("QR eigenvalues: N=2, eps=1 complex pair (3 +- i sqrt(3))/2") {
    auto vals = eigenvalues_qr(build_aplus(EpsilonParam(1.0), 2));
    REQUIRE(vals.size() == 2);
    std::sort(vals.begin(), vals.end(),
              [](const Cplx& a, const Cplx& b) { return a.imag() < b.imag(); });
    const Cplx expect(1.5, 0.5 * std::sqrt(3.0));
    CHECK(std::abs(vals[1] - expect) < 1e-13);
    CHECK(std::abs(vals[0] - std::conj(expect)) < 1e-13);
}

TEST_CASE("QR eigenvalues agree with a dense eigensolver oracle (N=8)") {
    const int N = 8;
    const TridiagonalMatrix T = build_aplus(EpsilonParam(0.5), N);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        a(i, i) = T.diag[static_cast<size_t>(i)];
        if (i + 1 < N) {
            a(i, i + 1) = T.super[static_cast<size_t>(i)];
            a(i + 1, i) = T.sub[static_cast<size_t>(i)];
        }
    }
    const Eigen::VectorXcd oracle = Eigen::EigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    const auto mine = eigenvalues_qr(T);
    for (int i = 0; i < N; ++i) {
        double best = 1e300;
        for (const Cplx& v : mine) best = std::min(best, std::abs(v - oracle(i)));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("trace is preserved by the QR iteration") {
    for (int N : {16, 64}) {
        for (double ev : {0.5, 1.5}) {
            const auto vals = eigenvalues_qr(build_aplus(EpsilonParam(ev), N));
            Cplx sum(0.0);
            for (const Cplx& v : vals) sum += v;
            const double expect = 0.5 * static_cast<double>(N) * (N + 1);
            CHECK(std::abs(sum - expect) <= 1e-9 * expect);
            CHECK(std::abs(sum.imag()) <= 1e-9 * expect);
        }
    }
}

TEST_CASE("every truncation eigenvalue satisfies Re mu >= 1") {
    for (int N : {4, 16, 48}) {
        for (double ev : {0.3, 1.0, 1.8}) {
            const auto vals = eigenvalues_qr(build_aplus(EpsilonParam(ev), N));
            for (const Cplx& v : vals) CHECK(v.real() >= 1.0 - 1e-9 * N * N);
        }
    }
}

TEST_CASE("QR in double-double matches double at small N") {
    const int N = 16;
    DenseMatrix<DD> a = densify(build_aplus_t<DD>(0.5, N));
    std::vector<DD> wr, wi;
    hqr_eigenvalues(a, wr, wi, 60);
    const auto ref = eigenvalues_qr(build_aplus(EpsilonParam(0.5), N));
    DD trace(0);
    for (const DD& v : wr) trace += v;
    CHECK(std::abs(to_double(trace) - 0.5 * N * (N + 1)) < 1e-20);
    for (size_t i = 0; i < wr.size(); ++i) {
        const Cplx mine(to_double(wr[i]), to_double(wi[i]));
        double best = 1e300;
        for (const Cplx& v : ref) best = std::min(best, std::abs(mine - v));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("stabilized spectrum: counts, reality, nesting") {
    const EpsilonParam eps(0.5);
    const Spectrum s64 = stabilized_spectrum(eps, 64);
    CHECK(s64.n_stabilized() >= 10);
    for (const auto& r : s64.records) {
        if (!r.stabilized) continue;
        CHECK(std::abs(r.mu.imag()) <= kRealityTol * std::abs(r.mu));
        CHECK(r.mu.real() > 0.0);
        CHECK(r.residual <= 1e-10);
    }
    // The eps = 1 case (1/eps integral) carries the same reality property.
    const Spectrum s_int = stabilized_spectrum(EpsilonParam(1.0), 64);
    CHECK(s_int.n_stabilized() >= 10);
    for (const auto& r : s_int.records)
        if (r.stabilized) CHECK(std::abs(r.mu.imag()) <= kRealityTol * std::abs(r.mu));

    // Nesting: stabilized values at N=16 reappear at N=32.
    const Spectrum s16 = stabilized_spectrum(eps, 16);
    const Spectrum s32 = stabilized_spectrum(eps, 32);
    for (const Cplx& mu : s16.stabilized_values()) {
        double best = 1e300;
        for (const Cplx& nu : s32.stabilized_values()) best = std::min(best, std::abs(mu - nu));
        CHECK(best <= kMatchTol * (1.0 + std::abs(mu)));
    }
}

TEST_CASE("stabilized records are sorted and simple") {
    const Spectrum s = stabilized_spectrum(EpsilonParam(0.8), 64);
    double prev = -1e300;
    double max_mu = 0.0;
    for (const auto& r : s.records) {
        CHECK(r.mu.real() >= prev);
        prev = r.mu.real();
        if (r.stabilized) max_mu = std::max(max_mu, std::abs(r.mu));
    }
    for (const auto& r : s.records)
        if (r.stabilized) CHECK(r.gap_to_nearest > 1e-6 * max_mu);
}

TEST_CASE("eigenvector: 1x1 and the hand-solved 2x2 complex pair") {
    const TridiagonalMatrix T1 = build_aplus(EpsilonParam(1.0), 1);
    const OneSidedCoeffs v1 = eigenvector(T1, Cplx(1.0, 0.0));
    CHECK(std::abs(std::abs(v1[0]) - 1.0) < 1e-14);

    const TridiagonalMatrix T2 = build_aplus(EpsilonParam(1.0), 2);
    const Cplx mu(1.5, 0.5 * std::sqrt(3.0));
    const OneSidedCoeffs v2 = eigenvector(T2, mu);
    // Row 1: (1 - mu) v1 - eps v2 = 0, so v2/v1 = (1 - mu)/eps.
    const Cplx ratio = v2[1] / v2[0];
    CHECK(std::abs(ratio - (Cplx(1.0, 0.0) - mu)) < 1e-10);
}

TEST_CASE("eigenvector residuals for all stabilized values at N=64") {
    const EpsilonParam eps(0.5);
    const TridiagonalMatrix T = build_aplus(eps, 64);
    const Spectrum s = stabilized_spectrum(eps, 64);
    for (const auto& r : s.records) {
        if (!r.stabilized) continue;
        const OneSidedCoeffs v = eigenvector(T, r.mu);
        CHECK(eigenpair_residual(T, v, r.mu) <= 1e-10);
    }
}

TEST_CASE("refined low eigenpairs in double-double") {
    const EpsilonParam eps(0.5);
    const auto pairs = lowest_eigenpairs_dd(eps, 96, 8);
    REQUIRE(static_cast<int>(pairs.size()) == 8);
    const Tridiagonal<DD> T = build_aplus_t<DD>(0.5, 96);
    for (const auto& p : pairs) {
        CHECK(p.residual <= 1e-22);
        // The DD refinement reproduces the stabilized double spectrum.
        CHECK(to_double(p.mu) >= 1.0);
    }
    for (size_t i = 0; i + 1 < pairs.size(); ++i)
        CHECK(to_double(pairs[i].mu) < to_double(pairs[i + 1].mu));
}
