#include "dipole/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dipole {

QuadratureRule gauss_legendre(int npoints)
{
    if (npoints < 1)
        throw std::domain_error("gauss_legendre: need at least one node");

    QuadratureRule rule;
    rule.nodes.resize(npoints);
    rule.weights.resize(npoints);

    const int half = (npoints + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess for the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n and P_{n-1} by upward recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= npoints; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = npoints * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[npoints - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[npoints - 1 - i] = w;
    }
    if (npoints % 2 == 1)
        rule.nodes[npoints / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre(int npoints, double a, double b)
{
    QuadratureRule rule = gauss_legendre(npoints);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    rule.nodes = (mid + halfwidth * rule.nodes.array()).matrix();
    rule.weights *= halfwidth;
    return rule;
}

} // namespace dipole
