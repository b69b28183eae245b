#include "fbheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fbheat {

GaussRule gauss_legendre(int order) {
    if (order < 1) throw DimensionError("quadrature order must be positive");
    GaussRule rule;
    rule.x.resize(static_cast<size_t>(order));
    rule.w.resize(static_cast<size_t>(order));
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[static_cast<size_t>(i)] = -x;
        rule.x[static_cast<size_t>(order - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[static_cast<size_t>(i)] = w;
        rule.w[static_cast<size_t>(order - 1 - i)] = w;
    }
    return rule;
}

std::vector<double> graded_breakpoints(double length, double h_end, double ratio) {
    if (!(length > 0.0) || !(h_end > 0.0) || !(ratio > 1.0))
        throw DomainError("graded mesh needs positive length, positive h_end, ratio > 1");
    std::vector<double> pts{0.0};
    double pos = 0.0, w = h_end;
    while (pos + w < 0.5 * length) {
        pos += w;
        pts.push_back(pos);
        w *= ratio;
    }
    std::vector<double> right{length};
    pos = length;
    w = h_end;
    while (pos - w > 0.5 * length) {
        pos -= w;
        right.push_back(pos);
        w *= ratio;
    }
    for (auto it = right.rbegin(); it != right.rend(); ++it) pts.push_back(*it);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace fbheat
