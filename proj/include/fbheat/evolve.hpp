#pragma once

#include <utility>
#include <vector>

#include "fbheat/dense.hpp"
#include "fbheat/grid.hpp"

namespace fbheat {

/// exp(-i t A_N) for the A_+ section of size N, by scaling-and-squaring with
/// the degree-13 Pade approximant.  Eigendecomposition is useless here: the
/// eigenvector matrix of the section is catastrophically ill-conditioned.
/// Throws NumericalError if the required scaling exceeds the cap (reduce t).
DenseMatrix<Cplx> propagator_matrix(const EpsilonParam& eps, int N, double t);

/// Evolve h_t + L h = 0 on the truncated mode blocks: positive modes by
/// exp(-i t A_N), negative modes by the mirrored block, mode 0 frozen
/// (constants are the kernel).  Requires t >= 0 and band(h0) <= N; the output
/// carries band N.
FourierCoeffsFull propagate(const FourierCoeffsFull& h0, const EpsilonParam& eps, int N,
                            double t);

/// sum_n c_n e^{-i mu_n t} u_n on a grid of the requested size.  The pairs
/// come from the stabilized spectrum, so each harmonic keeps its norm.
PeriodicGridFunction harmonic_solution(const std::vector<std::pair<double, OneSidedCoeffs>>& pairs,
                                       const std::vector<Cplx>& coeffs, double t, int grid_size);

/// ||exp(-i t A_N)||_2 across a family of truncations; unbounded growth in N
/// is the finite-section witness of ill-posedness.
struct PropagatorReport {
    std::vector<int> truncations;
    std::vector<double> operator_norms;
    std::vector<double> growth_ratios; // norms[i+1] / norms[i]
    double time = 0.0;
    double epsilon = 0.0;
};

PropagatorReport propagator_norm_growth(const EpsilonParam& eps, double t,
                                        const std::vector<int>& truncations);

/// ( sum_k (1+k^2)^s |v_k|^2 )^(1/2).
double sobolev_norm(const FourierCoeffsFull& h, double s);

/// Initial data with |v_k| = k^{-s} and reproducible random phases: finitely
/// smooth but no smoother, the hypothesis class of the non-existence result.
FourierCoeffsFull algebraic_decay_data(double s, int band, unsigned long long seed = 42);

} // namespace fbheat
