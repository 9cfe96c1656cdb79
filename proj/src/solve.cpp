#include "dipole/solve.hpp"

#include "dipole/bounds.hpp"

#include <cmath>
#include <limits>

namespace dipole {

namespace {

double critical_lambda(int n)
{
    return -0.25 * (n - 2.0) * (n - 2.0);
}

double lambda_value(int n, double gamma, Eigen::Index m, double tol)
{
    if (gamma == 0.0)
        return 0.0;
    const SymTridiag T = build_direct({n, gamma}, m);
    return extreme_eigenvalue(T, Side::Min, tol);
}

bool inside_bounds(int n, double gamma_c)
{
    const BoundsReport report = gamma_c_bounds(n);
    const double slack = 1e-9 * std::max(1.0, report.gamma_upper);
    return gamma_c >= report.gamma_lower - slack && gamma_c <= report.gamma_upper + slack
        && gamma_c >= report.hardy_floor - slack;
}

// Bisection for the unique root of lambda(gamma) = target, target < 0.
// lambda is strictly decreasing in gamma, so a valid bracket has
// lambda(lo) >= target >= lambda(hi).
CriticalResult root_find_gamma(int n, double target, Eigen::Index m, double gamma_tol,
                               double eigen_tol, double lo, double hi)
{
    double f_lo = lambda_value(n, lo, m, eigen_tol) - target;
    double f_hi = lambda_value(n, hi, m, eigen_tol) - target;
    int widenings = 0;
    while (f_lo < 0.0 || f_hi > 0.0) {
        if (++widenings > 10)
            throw BracketFailure("root_find_gamma: no sign change after 10 widenings (n="
                                 + std::to_string(n) + ")");
        if (f_lo < 0.0) {
            lo /= 1.5;
            f_lo = lambda_value(n, lo, m, eigen_tol) - target;
        }
        if (f_hi > 0.0) {
            hi *= 1.5;
            f_hi = lambda_value(n, hi, m, eigen_tol) - target;
        }
    }

    int iterations = 0;
    while (hi - lo > gamma_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        ++iterations;
        if (lambda_value(n, mid, m, eigen_tol) - target >= 0.0)
            lo = mid;
        else
            hi = mid;
    }

    CriticalResult result;
    result.n = n;
    result.method = CriticalMethod::DirectRootFind;
    result.m = m;
    result.gamma_c = 0.5 * (lo + hi);
    result.bracket = {lo, hi};
    result.iterations = iterations;
    result.bounds_ok = inside_bounds(n, result.gamma_c);
    return result;
}

} // namespace

std::string to_string(CriticalMethod method)
{
    return method == CriticalMethod::DirectRootFind ? "direct-rootfind" : "critical-k";
}

LambdaResult lambda_min(int n, double gamma, Eigen::Index m, double tol)
{
    if (gamma < 0.0)
        throw std::domain_error("lambda_min: require gamma >= 0");

    LambdaResult result;
    result.n = n;
    result.gamma = gamma;
    result.m = m;

    if (gamma == 0.0) {
        // Degenerate weight w_0 = 0 makes the K form singular at zero
        // coupling; the unperturbed ground state is known exactly.
        result.lambda = 0.0;
        result.vector = Eigen::VectorXd::Zero(m);
        result.vector[0] = 1.0;
        result.sandwich = {0.0, 0.0};
        return result;
    }

    const SymTridiag T = build_direct({n, gamma}, m);
    result.lambda = extreme_eigenvalue(T, Side::Min, tol);
    const double scale = std::max(1.0, T.diag.cwiseAbs().maxCoeff());
    const EigenPair pair = eigenvector_for(T, result.lambda, 1e-10 * scale);
    result.vector = pair.vector;
    // Sign convention: leading Gegenbauer coefficient positive.
    if (result.vector[0] < 0.0)
        result.vector = -result.vector;
    result.sandwich = {lambda_lower_bound(n, gamma), lambda_upper_bound(n, gamma)};
    return result;
}

CriticalResult critical_gamma_direct(int n, Eigen::Index m, double gamma_tol,
                                     double eigen_tol)
{
    if (m < 8)
        throw std::invalid_argument("critical_gamma_direct: require m >= 8");
    if (!(gamma_tol > 0.0))
        throw std::invalid_argument("critical_gamma_direct: tolerance must be positive");
    const BoundsReport report = gamma_c_bounds(n);
    return root_find_gamma(n, critical_lambda(n), m, gamma_tol, eigen_tol,
                           report.gamma_lower, report.gamma_upper);
}

CriticalResult critical_gamma_via_k(int n, Eigen::Index m, double eigen_tol)
{
    const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, m));
    // The reciprocal map gamma_c = 1/|lambda| amplifies absolute eigenvalue
    // error by gamma_c^2, and |lambda| shrinks like 1/n^2 with the dimension;
    // scaling the bisection tolerance by the operator norm keeps the coupling
    // accurate at every n.
    const auto [klo, khi] = gershgorin_bounds(K);
    const double scale = std::max(std::abs(klo), std::abs(khi));
    const double lambda_min_k = extreme_eigenvalue(K, Side::Min, eigen_tol * scale);

    CriticalResult result;
    result.n = n;
    result.method = CriticalMethod::CriticalK;
    result.m = m;
    result.gamma_c = -1.0 / lambda_min_k;
    result.bracket = {result.gamma_c, result.gamma_c};
    result.iterations = 0;
    result.bounds_ok = inside_bounds(n, result.gamma_c);
    return result;
}

std::optional<CriticalResult> critical_gamma_general(int n, double target_lambda,
                                                     Eigen::Index m, double gamma_tol,
                                                     double eigen_tol)
{
    if (m < 8)
        throw std::invalid_argument("critical_gamma_general: require m >= 8");
    if (target_lambda > 0.0)
        return std::nullopt; // lambda <= 0 for every coupling
    if (target_lambda == 0.0) {
        CriticalResult result;
        result.n = n;
        result.method = CriticalMethod::DirectRootFind;
        result.m = m;
        result.gamma_c = 0.0;
        result.bracket = {0.0, 0.0};
        result.iterations = 0;
        result.bounds_ok = false;
        return result;
    }
    // lambda >= max(-gamma, -gamma^2/(n-1)^2), so the coupling below still
    // sits left of the root; the right endpoint is validated and widened.
    const double depth = -target_lambda;
    const double lo = std::max(depth, (n - 1.0) * std::sqrt(depth));
    const double hi = 2.0 * lo + 1.0;
    return root_find_gamma(n, target_lambda, m, gamma_tol, eigen_tol, lo, hi);
}

std::optional<CriticalResult> self_adjointness_threshold(int n, Eigen::Index m,
                                                         double gamma_tol)
{
    return critical_gamma_general(n, -0.25 * n * (n - 4.0), m, gamma_tol);
}

FhDerivatives feynman_hellmann(int n, double gamma, Eigen::Index m, double h)
{
    if (!(gamma > 0.0))
        throw std::domain_error("feynman_hellmann: require gamma > 0");
    if (!(h > 0.0) || h > 0.5 * gamma)
        throw std::domain_error("feynman_hellmann: require 0 < h <= gamma/2");

    const double eigen_tol = 1e-13;
    const double lambda_plus = lambda_value(n, gamma + h, m, eigen_tol);
    const double lambda_minus = lambda_value(n, gamma - h, m, eigen_tol);

    const LambdaResult at_gamma = lambda_min(n, gamma, m, eigen_tol);
    const Eigen::VectorXd& d = at_gamma.vector;
    double expectation = 0.0; // d^T J d with J the unit-coupling off-diagonal part
    for (Eigen::Index l = 1; l < m; ++l)
        expectation += 2.0 * offdiag_a(static_cast<int>(l), n) * d[l - 1] * d[l];

    return {(lambda_plus - lambda_minus) / (2.0 * h), expectation};
}

std::vector<ConvergenceRow> convergence_study(int n, const std::vector<Eigen::Index>& ms,
                                              double eigen_tol)
{
    if (ms.empty())
        throw std::invalid_argument("convergence_study: empty truncation list");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] < 2)
            throw std::invalid_argument("convergence_study: truncations must be >= 2");
        if (i > 0 && ms[i] <= ms[i - 1])
            throw std::invalid_argument("convergence_study: truncations must increase");
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(ms.size());
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (const Eigen::Index m : ms) {
        const double gamma_c = critical_gamma_via_k(n, m, eigen_tol).gamma_c;
        rows.push_back({m, gamma_c, std::abs(gamma_c - previous)});
        previous = gamma_c;
    }
    return rows;
}

std::vector<AsymptoticRow> asymptotic_ratio(const std::vector<int>& ns, Eigen::Index m,
                                            double eigen_tol)
{
    std::vector<AsymptoticRow> rows;
    rows.reserve(ns.size());
    for (const int n : ns) {
        if (n < 5)
            throw std::invalid_argument("asymptotic_ratio: require n >= 5");
        const double gamma_c = critical_gamma_via_k(n, m, eigen_tol).gamma_c;
        rows.push_back({n, gamma_c, gamma_c / ((n - 2.0) * (n - 4.0))});
    }
    return rows;
}

} // namespace dipole
