#pragma once

#include <vector>

#include "fbheat/errors.hpp"

namespace fbheat {

/// Gauss-Legendre rule on [-1,1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial.
GaussRule gauss_legendre(int order);

/// Breakpoints 0 = b_0 < ... < b_P = length of a panel mesh geometrically
/// clustered at both ends: smallest panel h_end at each end, widths growing
/// by `ratio` toward the middle.
std::vector<double> graded_breakpoints(double length, double h_end, double ratio);

} // namespace fbheat
