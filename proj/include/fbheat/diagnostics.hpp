#pragma once

#include <map>
#include <vector>

#include "fbheat/dense.hpp"
#include "fbheat/grid.hpp"
#include "fbheat/spectrum.hpp"

namespace fbheat {

/// Singular values in decreasing order (one-sided Jacobi).
std::vector<double> singular_values(const DenseMatrix<double>& A);
std::vector<double> singular_values(const DenseMatrix<Cplx>& A);

/// Leading N x N block of the inverse of the A_+ section of size 2N,
/// assembled column-by-column from tridiagonal solves.
DenseMatrix<double> inverse_block(const EpsilonParam& eps, int N);

/// Partial Schatten sums of the inverse.  For each exponent p the sum
/// sum_{j<=N} s_j^p is compared between block sizes N and 2N; small relative
/// change at p = 1 is the trace-class evidence.
struct SchattenReport {
    std::vector<double> singular_values; // block size N, decreasing
    std::map<double, double> partial_sums;
    std::map<double, double> partial_sums_doubled;
    std::map<double, double> stabilization; // p -> |sum_2N - sum_N| / sum_N
    int block = 0;
    double epsilon = 0.0;
};

SchattenReport schatten_partial(const EpsilonParam& eps, int N,
                                const std::vector<double>& p_list);

/// Riesz-basis failure metrics for an ordered eigenvector family.
/// angles[j] is the principal angle of vector j+2 against the span of the
/// first j+1 vectors; gram_condition[j] is cond_2 of the Gram matrix of the
/// first j+1 vectors.  Angles at or below the reporting floor of the working
/// precision are still listed but flagged through precision_floor_index.
struct RieszDiagnostics {
    std::vector<double> angles;
    std::vector<double> gram_condition;
    int precision_floor_index = -1; // first angle index at/below the floor, -1 if none
    double precision_floor = 0.0;
    int rank_deficient_at = -1; // QR broke down here; report truncated before it
};

/// Angles/conditioning of explicitly given unit vectors.
RieszDiagnostics subspace_angles(const std::vector<OneSidedCoeffs>& vectors);

/// Distances of a target from the nested spans of the vector family;
/// non-increasing in exact arithmetic.
std::vector<double> completeness_residuals(const std::vector<OneSidedCoeffs>& vectors,
                                           const OneSidedCoeffs& target);

/// Full pipeline: the `count+1` lowest eigenvectors of the A_+ section of
/// size `truncation`, then the angle diagnostics, carried out end-to-end in
/// the selected precision (double-double keeps the angles meaningful past
/// the ~1e-15 floor where standard precision saturates).
RieszDiagnostics riesz_diagnostics(const EpsilonParam& eps, int count, int truncation,
                                   Precision mode);

/// Completeness probe against the eigenvector spans, run in the selected
/// precision; the real-valued target is given by its positive-mode
/// coefficients t_1..t_truncation.
std::vector<double> completeness_diagnostics(const EpsilonParam& eps,
                                             const std::vector<double>& target, int count,
                                             int truncation, Precision mode);

} // namespace fbheat
