#include "dipole/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dipole {

namespace {

void require_dimension(int n)
{
    if (n < 3)
        throw std::domain_error("dipole operators: require dimension n >= 3");
}

double critical_lambda(int n)
{
    return -0.25 * (n - 2.0) * (n - 2.0);
}

double atilde(int ell, int n)
{
    const double lambda = critical_lambda(n);
    return offdiag_a(ell, n)
        / std::sqrt(weight_w(ell, n, lambda) * weight_w(ell - 1, n, lambda));
}

} // namespace

CriticalOperatorSpec CriticalOperatorSpec::make(int n, Eigen::Index m)
{
    require_dimension(n);
    if (m < 2)
        throw std::invalid_argument("CriticalOperatorSpec: require truncation m >= 2");
    return {n, critical_lambda(n), m};
}

double offdiag_a(int ell, int n)
{
    require_dimension(n);
    if (ell < 1)
        throw std::domain_error("offdiag_a: defined for l >= 1 only");
    const double l = ell;
    return std::sqrt(l * (l + n - 3.0) / ((2.0 * l + n - 4.0) * (2.0 * l + n - 2.0)));
}

double weight_w(int ell, int n, double lambda)
{
    const double l = ell;
    return l * (l + n - 2.0) - lambda;
}

SymTridiag build_direct(const DipoleProblem& problem, Eigen::Index m)
{
    require_dimension(problem.n);
    if (problem.gamma < 0.0)
        throw std::domain_error("build_direct: require gamma >= 0");
    if (m < 2)
        throw std::invalid_argument("build_direct: require truncation m >= 2");
    SymTridiag T;
    T.diag.resize(m);
    T.offdiag.resize(m - 1);
    for (Eigen::Index l = 0; l < m; ++l)
        T.diag[l] = static_cast<double>(l) * (static_cast<double>(l) + problem.n - 2.0);
    for (Eigen::Index l = 1; l < m; ++l)
        T.offdiag[l - 1] = problem.gamma * offdiag_a(static_cast<int>(l), problem.n);
    return T;
}

SymTridiag build_critical_k(const CriticalOperatorSpec& spec)
{
    require_dimension(spec.n);
    if (spec.m < 2)
        throw std::invalid_argument("build_critical_k: require truncation m >= 2");
    if (spec.lambda_pinned != critical_lambda(spec.n))
        throw std::invalid_argument("build_critical_k: lambda must be pinned at -(n-2)^2/4");
    SymTridiag K;
    K.diag = Eigen::VectorXd::Zero(spec.m);
    K.offdiag.resize(spec.m - 1);
    for (Eigen::Index l = 1; l < spec.m; ++l)
        K.offdiag[l - 1] = atilde(static_cast<int>(l), spec.n);
    return K;
}

Eigen::VectorXd atilde_decay_check(int n, int ell_max)
{
    require_dimension(n);
    if (ell_max < 10)
        throw std::invalid_argument("atilde_decay_check: require ell_max >= 10");
    Eigen::VectorXd scaled(ell_max);
    for (int l = 1; l <= ell_max; ++l)
        scaled[l - 1] = static_cast<double>(l) * static_cast<double>(l) * atilde(l, n);
    return scaled;
}

NormBound norm_bound(int n)
{
    require_dimension(n);
    const double radicand = 2.0 * (26.0 - 18.0 * n + 3.0 * static_cast<double>(n) * n);
    const double r = radicand >= 0.0
        ? 0.25 * (6.0 - 2.0 * n + std::sqrt(radicand))
        : std::numeric_limits<double>::quiet_NaN();

    int scan_limit = 64;
    if (std::isfinite(r) && r > 0.0)
        scan_limit = std::max(scan_limit, 4 * static_cast<int>(std::ceil(r)));

    double max_entry = 0.0;
    int argmax = 1;
    for (int l = 1; l <= scan_limit; ++l) {
        const double value = atilde(l, n);
        if (value > max_entry) {
            max_entry = value;
            argmax = l;
        }
    }
    return NormBound{2.0 * max_entry, argmax, r};
}

} // namespace dipole
