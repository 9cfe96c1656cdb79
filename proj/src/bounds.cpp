#include "dipole/bounds.hpp"

#include "dipole/quadrature.hpp"
#include "dipole/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dipole {

namespace {

void require_dimension(int n)
{
    if (n < 3)
        throw std::domain_error("bounds: require dimension n >= 3");
}

} // namespace

BoundsReport gamma_c_bounds(int n)
{
    require_dimension(n);
    const double q = (n - 2.0) * (n - 4.0);
    BoundsReport report;
    report.n = n;
    report.gamma_upper = 15.0 * std::numbers::pi * (q + 4.0) / 32.0;
    report.hardy_floor = 0.25 * (n - 2.0) * (n - 2.0);
    if (n == 3)
        report.gamma_lower = 0.25;
    else if (n == 4)
        report.gamma_lower = 1.0;
    else
        report.gamma_lower = std::pow(3.0, 1.5) * (q + 1.0) / 8.0;
    return report;
}

double lambda_lower_bound(int n, double gamma)
{
    require_dimension(n);
    if (gamma < 0.0)
        throw std::domain_error("lambda_lower_bound: require gamma >= 0");
    return std::max(-gamma, -gamma * gamma / ((n - 1.0) * (n - 1.0)));
}

double lambda_upper_bound(int n, double gamma)
{
    require_dimension(n);
    if (!(gamma > 0.0))
        throw std::domain_error("lambda_upper_bound: require gamma > 0");
    const double arg = 2.0 * gamma / (n - 1.0);
    const double ratio = std::exp(log_bessel_i(0.5 * n, arg) - log_bessel_i(0.5 * n - 1.0, arg));
    return -0.5 * gamma * ratio;
}

TrialIntegrals trial_function_integrals(int n)
{
    require_dimension(n);
    const double q = (n - 2.0) * (n - 4.0);
    const QuadratureRule rule =
        gauss_legendre(128, 0.5 * std::numbers::pi, std::numbers::pi);

    double numerator = 0.0;
    double denominator = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double theta = rule.nodes[i];
        const double w = rule.weights[i];
        const double sin2t = std::sin(2.0 * theta);
        const double cos2t = std::cos(2.0 * theta);
        const double cost = std::cos(theta);
        numerator += w * (-cost) * sin2t * sin2t;
        denominator += w * (4.0 * cos2t * cos2t + q * cost * cost);
    }

    const double numerator_exact = 8.0 / 15.0;
    const double denominator_exact = std::numbers::pi * (4.0 + q) / 4.0;
    if (std::abs(numerator - numerator_exact) > 1e-10
        || std::abs(denominator - denominator_exact) > 1e-10)
        throw std::logic_error("trial_function_integrals: quadrature disagrees with closed form");

    return {numerator, denominator, denominator / numerator};
}

} // namespace dipole
