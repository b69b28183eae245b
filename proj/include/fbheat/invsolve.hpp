#pragma once

#include <complex>
#include <vector>

#include "fbheat/grid.hpp"
#include "fbheat/tridiagonal.hpp"

namespace fbheat {

/// The constant that makes the integral-form solution mean-free, together
/// with a two-rule quadrature error estimate.  It is a bounded linear
/// functional of f.
struct K1Functional {
    Cplx value{0.0, 0.0};
    double quadrature_error_estimate = 0.0;
};

/// Log-log power-law fit y ~ C * x^exponent.
struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0; // RMS deviation in log-log coordinates
    int n_min = 0;
    int n_max = 0;
    bool inconclusive = false;
};

DecayFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

/// Kernel ratio (|tan(t/2)| / |tan(theta/2)|)^(1/eps), evaluated as an
/// exponential of a log difference so that it stays in [0,1] uniformly up to
/// theta = +-pi where the raw cotangent/tangent factors overflow.
/// Requires 0 <= t <= theta < pi or -pi < theta <= t <= 0.
double weight_ratio(double t, double theta, const EpsilonParam& eps);

struct ExplicitSolveResult {
    PeriodicGridFunction h;               // mean-free solution on the input grid
    K1Functional k1;
    double residual_l2 = 0.0;             // ||ell[h] - f|| on the grid's band
    double quadrature_error_estimate = 0.0;
};

/// Invert ell on mean-free data through the closed-form kernel
///   h(theta) = int_0^theta f(t) (1 - weight_ratio(t,theta)) dt + k1,
/// using composite Gauss-Legendre panels graded toward 0 and +-pi and
/// stable scaled prefix sums for the weighted cumulative integral.
/// Rejects input whose mean exceeds 1e-10 (relative); smaller means are
/// projected out.  Throws AccuracyError if the two-rule estimate exceeds
/// `accuracy_goal`.
ExplicitSolveResult solve_explicit(const PeriodicGridFunction& f, const EpsilonParam& eps,
                                   double accuracy_goal = 1e-6);

/// The mean-fixing constant alone (same quadrature as solve_explicit).
K1Functional compute_k1(const PeriodicGridFunction& f, const EpsilonParam& eps);

/// Galerkin inversion in the trigonometric basis: the positive and negative
/// mode blocks decouple into tridiagonal systems A+ x = -i f+ and the
/// mirrored block; the retained-mode residual is at rounding level.
FourierCoeffsFull solve_galerkin(const FourierCoeffsFull& f, const EpsilonParam& eps, int N);

/// Stability probe for ||h'|| <= K (|k1| + ||f||): the largest observed ratio
/// over a sample set, at truncation N and 2N.
struct EnergyEstimateReport {
    double max_ratio = 0.0;
    double max_ratio_doubled = 0.0;
    double relative_change = 0.0;
};

EnergyEstimateReport energy_estimate_check(const std::vector<FourierCoeffsFull>& samples,
                                           const EpsilonParam& eps, int N);

/// Fit of log ||A+^{-1} e_n|| against log n on n in [N/8, N/2]; columns are
/// taken from the doubled truncation to suppress boundary contamination.
DecayFit column_norm_decay(const EpsilonParam& eps, int N);

struct EntryDecayReport {
    DecayFit along_row;    // m <= n regime: fixed m, growing column index n
    DecayFit along_column; // n <  m regime: fixed n, growing row index m
    bool diagonal_positive = false;
};

/// Power-law fits for the inverse's matrix entries away from the diagonal.
EntryDecayReport entry_decay(const EpsilonParam& eps, int N);

} // namespace fbheat
