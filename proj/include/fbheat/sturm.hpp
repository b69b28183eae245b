#pragma once

#include <utility>
#include <vector>

#include "fbheat/grid.hpp"
#include "fbheat/spectrum.hpp"
#include "fbheat/tridiagonal.hpp"

namespace fbheat {

/// Coefficients of the singular Sturm-Liouville expression on (0,1):
///   b[u] = -(1/w) (p u')',
///   p(x) = (1-x)^(1+1/eps) (x+1)^(1-1/eps),
///   w(x) = x^-1 (1-x)^(1/eps) (x+1)^(-1/eps).
double sl_p(double x, const EpsilonParam& eps);
double sl_w(double x, const EpsilonParam& eps);

/// P1 finite-element discretization of the weak form
///   int p u' v' = mu int w u v
/// on a mesh geometrically graded into both singular endpoints.  Degrees of
/// freedom sit at x_1..x_M: the x=0 node is omitted (the 1/x weight makes a
/// hat there non-integrable, matching u(0) = 0), while x=1 keeps its hat and
/// the do-nothing boundary term encodes p u' -> 0.
struct SLDiscretization {
    std::vector<double> mesh;   // nodes 0 = x_0 < ... < x_M = 1
    TridiagonalMatrix K;        // symmetric stiffness, dimension M
    TridiagonalMatrix Mass;     // symmetric positive definite mass, dimension M
    double epsilon = 0.0;
};

/// Assemble on `elements` elements (>= 64).  Element integrals use
/// Gauss-Legendre of high order; mass integrals absorb the x^-1 weight
/// exactly through a logarithmic substitution, and on the first element the
/// omitted corner hat cancels the singularity altogether.
SLDiscretization sl_assemble(const EpsilonParam& eps, int elements);

/// The k smallest generalized eigenvalues of K u = mu Mass u, by bisection on
/// the factorization inertia of K - sigma*Mass followed by a shifted
/// inverse-iteration polish.  All values are >= -1e-10 by self-adjointness.
std::vector<double> sl_eigenvalues(const SLDiscretization& d, int k);

struct SLCrossCheck {
    /// (mu_SL, 2 mu_{A+}/eps) in increasing order.
    std::vector<std::pair<double, double>> pairs;
    double max_rel_diff = 0.0;
};

/// Pair the first k Sturm-Liouville eigenvalues against the scaled stabilized
/// eigenvalues of the truncated A_+: the two independent discretizations must
/// meet on the same spectrum.
SLCrossCheck cross_check(const EpsilonParam& eps, int N, int k, int mesh_elements = 2048,
                         Precision mode = Precision::standard);

} // namespace fbheat
