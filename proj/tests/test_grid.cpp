#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "fbheat/grid.hpp"
#include "test_helpers.hpp"

using namespace fbheat;
using fbheat::testutil::max_coeff_diff;
using fbheat::testutil::random_coeffs;
using fbheat::testutil::sample_function;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("epsilon parameter rejects values outside (0,2)") {
    CHECK_NOTHROW(EpsilonParam(0.5));
    CHECK_NOTHROW(EpsilonParam(1.999));
    CHECK_THROWS_AS(EpsilonParam(0.0), DomainError);
    CHECK_THROWS_AS(EpsilonParam(2.0), DomainError);
    CHECK_THROWS_AS(EpsilonParam(-0.3), DomainError);
}

TEST_CASE("dft of a constant is the pure mode 0") {
    const auto g = sample_function(32, [](double) { return Cplx(1.0, 0.0); });
    const FourierCoeffsFull c = dft(g);
    CHECK(std::abs(c.at(0) - 1.0) < 1e-14);
    for (int k = 1; k <= c.band(); ++k) {
        CHECK(std::abs(c.at(k)) < 1e-14);
        CHECK(std::abs(c.at(-k)) < 1e-14);
    }
}

TEST_CASE("dft of cos(theta) gives the two half modes") {
    const auto g = sample_function(64, [](double th) { return Cplx(std::cos(th), 0.0); });
    const FourierCoeffsFull c = dft(g);
    CHECK(std::abs(c.at(1) - 0.5) < 1e-14);
    CHECK(std::abs(c.at(-1) - 0.5) < 1e-14);
    CHECK(std::abs(c.at(0)) < 1e-14);
    CHECK(std::abs(c.at(2)) < 1e-14);
}

TEST_CASE("band-limited round trip against direct evaluation") {
    std::mt19937_64 rng(7);
    const FourierCoeffsFull c = random_coeffs(10, rng);
    // Oracle: evaluate the trigonometric polynomial by direct summation.
    const int M = 64;
    const auto g = sample_function(M, [&](double th) { return eval_fourier(c, th); });
    const FourierCoeffsFull back = dft(g);
    CHECK(max_coeff_diff(back, c) < 1e-12);
    const PeriodicGridFunction g2 = idft(back, M);
    double worst = 0.0;
    for (int j = 0; j < M; ++j) worst = std::max(worst, std::abs(g2[j] - g[j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("idft rejects undersized grids") {
    const FourierCoeffsFull c(10);
    CHECK_THROWS_AS(idft(c, 20), DimensionError);
    CHECK_NOTHROW(idft(c, 22));
}

TEST_CASE("grid construction rejects fewer than 8 samples") {
    CHECK_THROWS_AS(PeriodicGridFunction(std::vector<Cplx>(7)), DimensionError);
}

TEST_CASE("apply_ell annihilates constants") {
    FourierCoeffsFull one(0);
    one.at(0) = 1.0;
    const FourierCoeffsFull out = apply_ell(one, EpsilonParam(0.7));
    CHECK(l2_norm(out) == 0.0);
}

TEST_CASE("apply_ell of cos(theta) matches the symbolic derivative") {
    // ell[cos] = eps (sin * (-sin))' - sin = -eps sin(2 theta) - sin(theta).
    const double eps_v = 0.73;
    FourierCoeffsFull h(1);
    h.at(1) = 0.5;
    h.at(-1) = 0.5;
    const FourierCoeffsFull out = apply_ell(h, EpsilonParam(eps_v));
    FourierCoeffsFull expect(2);
    const Cplx ih(0.0, 0.5); // sin th = -i/2 e^{i th} + i/2 e^{-i th}; negate
    expect.at(1) = ih;
    expect.at(-1) = -ih;
    expect.at(2) = eps_v * ih;
    expect.at(-2) = -eps_v * ih;
    CHECK(max_coeff_diff(out, expect) < 1e-15);
}

TEST_CASE("apply_ell of e^{i theta} feeds the subdiagonal with +eps") {
    // Column 1 of the mode matrix: i on the diagonal, i*eps below.
    FourierCoeffsFull h(1);
    h.at(1) = 1.0;
    const FourierCoeffsFull out = apply_ell(h, EpsilonParam(1.0));
    CHECK(std::abs(out.at(1) - Cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(out.at(2) - Cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(out.at(0)) == 0.0);
    CHECK(std::abs(out.at(-1)) == 0.0);
}

TEST_CASE("apply_J fixes constants and sin(theta), and is an exact involution") {
    const auto one = sample_function(32, [](double) { return Cplx(1.0, 0.0); });
    const auto j_one = apply_J(one);
    for (int j = 0; j < 32; ++j) CHECK(j_one[j] == Cplx(1.0, 0.0));

    const auto s = sample_function(32, [](double th) { return Cplx(std::sin(th), 0.0); });
    const auto j_s = apply_J(s);
    for (int j = 0; j < 32; ++j) CHECK(std::abs(j_s[j] - s[j]) < 1e-15);

    std::mt19937_64 rng(3);
    const auto h = sample_function(64, [&](double) {
        std::normal_distribution<double> g(0.0, 1.0);
        return Cplx(g(rng), g(rng));
    });
    const auto jj = apply_J(apply_J(h));
    for (int j = 0; j < 64; ++j) CHECK(jj[j] == h[j]); // pure permutation
    CHECK(l2_norm(apply_J(h)) == doctest::Approx(l2_norm(h)).epsilon(1e-15));
}

TEST_CASE("apply_J rejects odd grids") {
    std::vector<Cplx> nine(9, Cplx(1.0, 0.0));
    CHECK_THROWS_AS(apply_J(PeriodicGridFunction(std::move(nine))), DimensionError);
}

TEST_CASE("positive, zero and negative mode blocks do not mix") {
    std::mt19937_64 rng(11);
    FourierCoeffsFull h = random_coeffs(12, rng);
    for (int k = -12; k <= 0; ++k) h.at(k) = 0.0;
    const FourierCoeffsFull out = apply_ell(h, EpsilonParam(0.5));
    for (int k = -out.band(); k <= 0; ++k) CHECK(std::abs(out.at(k)) == 0.0);
}

TEST_CASE("mode-0 of apply_ell vanishes for every input") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 20; ++it) {
        const FourierCoeffsFull h = random_coeffs(16, rng);
        CHECK(std::abs(apply_ell(h, EpsilonParam(1.3)).mean()) == 0.0);
    }
}

TEST_CASE("adjoint symmetry (L h, g) = (h, J L J g)") {
    std::mt19937_64 rng(13);
    const EpsilonParam eps(0.8);
    for (int it = 0; it < 10; ++it) {
        const FourierCoeffsFull h = random_coeffs(10, rng);
        const FourierCoeffsFull g = random_coeffs(10, rng);
        const Cplx lhs = inner(apply_ell(h, eps), g);
        const int M = 64;
        const PeriodicGridFunction jg = apply_J(idft(g, M));
        const FourierCoeffsFull ljg = apply_ell(dft(jg), eps);
        const PeriodicGridFunction jljg = apply_J(idft(ljg, 2 * M));
        const Cplx rhs = inner(idft(h, 2 * M), jljg);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("mean-square norms agree between grid and coefficients") {
    std::mt19937_64 rng(14);
    const FourierCoeffsFull c = random_coeffs(9, rng);
    const PeriodicGridFunction g = idft(c, 64);
    CHECK(l2_norm(g) == doctest::Approx(l2_norm(c)).epsilon(1e-12));
}
