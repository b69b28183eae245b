#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fbheat/diagnostics.hpp"
#include "fbheat/grid.hpp"
#include "fbheat/spectrum.hpp"
#include "fbheat/tridiagonal.hpp"
#include "test_helpers.hpp"

using namespace fbheat;
using fbheat::testutil::random_unit_vector;

TEST_CASE("A+ at eps=1, N=4 equals the reference section entry-for-entry") {
    const TridiagonalMatrix T = build_aplus(EpsilonParam(1.0), 4);
    CHECK(T.diag == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK(T.super == std::vector<double>{-1.0, -3.0, -6.0});
    CHECK(T.sub == std::vector<double>{1.0, 3.0, 6.0});
}

TEST_CASE("A+ at eps=0.5, N=2") {
    const TridiagonalMatrix T = build_aplus(EpsilonParam(0.5), 2);
    CHECK(T.diag == std::vector<double>{1.0, 2.0});
    CHECK(T.super == std::vector<double>{-0.5});
    CHECK(T.sub == std::vector<double>{0.5});
}

TEST_CASE("zero truncation is rejected") {
    CHECK_THROWS_AS(build_aplus(EpsilonParam(1.0), 0), DimensionError);
}

TEST_CASE("A+ acting on basis vectors matches -i * apply_ell on positive modes") {
    for (double ev : {0.31, 1.0, 1.7}) {
        const EpsilonParam eps(ev);
        const int N = 12;
        const TridiagonalMatrix T = build_aplus(eps, N);
        for (int basis : {1, 5}) {
            OneSidedCoeffs e(static_cast<size_t>(N), Cplx(0.0));
            e[static_cast<size_t>(basis - 1)] = 1.0;
            const OneSidedCoeffs via_matrix = fbheat::apply(T, e);
            const FourierCoeffsFull lifted = apply_ell(one_sided_to_full(e), eps);
            for (int m = 1; m <= N; ++m) {
                const Cplx spectral = Cplx(0.0, -1.0) * lifted.at(m);
                CHECK(std::abs(via_matrix[static_cast<size_t>(m - 1)] - spectral) < 1e-15);
            }
        }
    }
}

TEST_CASE("tridiagonal apply on small frozen cases") {
    const TridiagonalMatrix T1 = build_aplus(EpsilonParam(1.0), 1);
    CHECK(fbheat::apply(T1, {Cplx(1.0)}) == OneSidedCoeffs{Cplx(1.0)});

    const TridiagonalMatrix T2 = build_aplus(EpsilonParam(1.0), 2);
    const OneSidedCoeffs out = fbheat::apply(T2, {Cplx(1.0), Cplx(0.0)});
    CHECK(out[0] == Cplx(1.0));
    CHECK(out[1] == Cplx(1.0)); // the sub entry eps feeds mode 2
}

TEST_CASE("apply matches a dense matrix product") {
    std::mt19937_64 rng(21);
    const int N = 24;
    const TridiagonalMatrix T = build_aplus(EpsilonParam(0.9), N);
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        dense(i, i) = T.diag[static_cast<size_t>(i)];
        if (i + 1 < N) {
            dense(i, i + 1) = T.super[static_cast<size_t>(i)];
            dense(i + 1, i) = T.sub[static_cast<size_t>(i)];
        }
    }
    for (int it = 0; it < 5; ++it) {
        const OneSidedCoeffs v = random_unit_vector(N, rng);
        Eigen::VectorXcd ve(N);
        for (int i = 0; i < N; ++i) ve(i) = v[static_cast<size_t>(i)];
        const Eigen::VectorXcd dv = dense * ve;
        const OneSidedCoeffs tv = fbheat::apply(T, v);
        for (int i = 0; i < N; ++i) CHECK(std::abs(tv[static_cast<size_t>(i)] - dv(i)) < 1e-14);
    }
}

TEST_CASE("apply rejects dimension mismatch") {
    const TridiagonalMatrix T = build_aplus(EpsilonParam(1.0), 4);
    CHECK_THROWS_AS(fbheat::apply(T, OneSidedCoeffs(3)), DimensionError);
}

TEST_CASE("dissipativity report: structure and sampled quadratic form") {
    for (double ev : {0.5, 1.0, 1.5}) {
        const auto rep = dissipativity_report(build_aplus(EpsilonParam(ev), 16), 50);
        CHECK(rep.structural_pass);
    }
    // e_1 gives exactly the first diagonal entry.
    const TridiagonalMatrix T = build_aplus(EpsilonParam(1.0), 4);
    OneSidedCoeffs e1(4, Cplx(0.0));
    e1[0] = 1.0;
    CHECK(quadratic_form_re(T, e1) == doctest::Approx(1.0).epsilon(1e-15));

    const auto rep = dissipativity_report(build_aplus(EpsilonParam(0.5), 64), 1000);
    CHECK(rep.min_quadratic_form >= 1.0 - 1e-12);
}

TEST_CASE("quadratic form identity: Re<A+ v, v> = sum m |v_m|^2") {
    std::mt19937_64 rng(22);
    const int N = 32;
    const TridiagonalMatrix T = build_aplus(EpsilonParam(1.4), N);
    for (int it = 0; it < 50; ++it) {
        const OneSidedCoeffs v = random_unit_vector(N, rng);
        double expect = 0.0;
        for (int m = 1; m <= N; ++m) expect += m * std::norm(v[static_cast<size_t>(m - 1)]);
        CHECK(quadratic_form_re(T, v) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("A- mirrors the spectrum of A+") {
    // N=1: single entries +-1.
    const TridiagonalMatrix m1 = build_aminus(EpsilonParam(0.7), 1);
    CHECK(m1.diag[0] == -1.0);

    // N=2, eps=1: characteristic polynomial mu^2 - 3 mu + 3 for A+, so the
    // mirrored pair is -(3 +- i sqrt(3))/2.
    const auto vals = eigenvalues_qr(build_aminus(EpsilonParam(1.0), 2));
    const Cplx expect(-1.5, 0.5 * std::sqrt(3.0));
    const double d1 = std::min(std::abs(vals[0] - expect), std::abs(vals[0] - std::conj(expect)));
    const double d2 = std::min(std::abs(vals[1] - expect), std::abs(vals[1] - std::conj(expect)));
    CHECK(d1 < 1e-12);
    CHECK(d2 < 1e-12);
}

TEST_CASE("spectrum mirror against a dense eigensolver oracle at N=8") {
    for (double ev : {0.5, 1.2}) {
        const int N = 8;
        auto densify_e = [N](const TridiagonalMatrix& T) {
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
            for (int i = 0; i < N; ++i) {
                a(i, i) = T.diag[static_cast<size_t>(i)];
                if (i + 1 < N) {
                    a(i, i + 1) = T.super[static_cast<size_t>(i)];
                    a(i + 1, i) = T.sub[static_cast<size_t>(i)];
                }
            }
            return a;
        };
        const Eigen::VectorXcd ep =
            Eigen::EigenSolver<Eigen::MatrixXd>(densify_e(build_aplus(EpsilonParam(ev), N)))
                .eigenvalues();
        const Eigen::VectorXcd em =
            Eigen::EigenSolver<Eigen::MatrixXd>(densify_e(build_aminus(EpsilonParam(ev), N)))
                .eigenvalues();
        for (int i = 0; i < N; ++i) {
            double best = 1e300;
            for (int j = 0; j < N; ++j) best = std::min(best, std::abs(ep(i) + em(j)));
            CHECK(best < 1e-10);
        }
    }
}

TEST_CASE("inverses of A- and A+ share singular values (N=16, eps=0.5)") {
    const EpsilonParam eps(0.5);
    const int N = 16;
    auto invert = [N](const TridiagonalMatrix& T) {
        std::vector<double> d = T.diag, up = T.super, lo = T.sub;
        TridiagLU<double> lu(std::move(d), std::move(up), std::move(lo));
        DenseMatrix<double> inv(N, N);
        for (int c = 0; c < N; ++c) {
            std::vector<double> e(static_cast<size_t>(N), 0.0);
            e[static_cast<size_t>(c)] = 1.0;
            lu.solve(e);
            for (int r = 0; r < N; ++r) inv(r, c) = e[static_cast<size_t>(r)];
        }
        return inv;
    };
    const auto sp = singular_values(invert(build_aplus(eps, N)));
    const auto sm = singular_values(invert(build_aminus(eps, N)));
    for (size_t i = 0; i < sp.size(); ++i)
        CHECK(std::abs(sp[i] - sm[i]) <= 1e-12 * sp.front());
}
