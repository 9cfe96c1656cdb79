#include "dipole/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dipole {

namespace {

// Lanczos coefficients, g = 7, 9 terms. Good to ~1e-15 relative on x > 0.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("ln_gamma: require x > 0, got " + std::to_string(x));
    // For x < 0.5 use the reflection-free shift ln G(x) = ln G(x+1) - ln x,
    // keeping the Lanczos core on arguments >= 0.5.
    if (x < 0.5)
        return ln_gamma(x + 1.0) - std::log(x);

    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        series += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double pochhammer(double x, int k)
{
    if (k < 0)
        throw std::domain_error("pochhammer: require k >= 0");
    double product = 1.0;
    for (int j = 0; j < k; ++j)
        product *= x + static_cast<double>(j);
    return product;
}

double gegenbauer(int order, double index, double x)
{
    if (order < 0)
        return 0.0; // C_{-1} vanishes in the recurrence convention
    if (order == 0)
        return 1.0;
    double prev = 1.0;
    double curr = 2.0 * index * x;
    for (int l = 1; l < order; ++l) {
        const double next =
            (2.0 * (l + index) * x * curr - (l + 2.0 * index - 1.0) * prev) / (l + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double gegenbauer(const GegenbauerParams& params)
{
    if (params.order < 0)
        throw std::domain_error("gegenbauer: order must be nonnegative");
    if (!(params.index > 0.0))
        throw std::domain_error("gegenbauer: index must be positive");
    if (!(std::abs(params.argument) <= 1.0))
        throw std::domain_error("gegenbauer: argument must lie in [-1, 1]");
    return gegenbauer(params.order, params.index, params.argument);
}

double gegenbauer_norm_const(int order, int n)
{
    if (order < 0)
        throw std::domain_error("gegenbauer_norm_const: order must be nonnegative");
    if (n < 3)
        throw std::domain_error("gegenbauer_norm_const: require n >= 3");
    constexpr double log_pi = 1.1447298858494001741;
    constexpr double log_two = 0.69314718055994530942;
    const double log_sq = ln_gamma(order + 1.0) + std::log(2.0 * order + n - 2.0)
        - (4.0 - n) * log_two - log_pi - ln_gamma(order + n - 2.0);
    const double log_norm = 0.5 * log_sq + ln_gamma((n - 2.0) / 2.0);
    if (log_norm >= std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("gegenbauer_norm_const: result overflows double");
    return std::exp(log_norm);
}

double log_bessel_i(double nu, double x)
{
    // Wider range than bessel_i: the series sum stays below the overflow
    // threshold for x somewhat beyond 700, and ratios of nearby orders cancel
    // the large prefactors in log space.
    if (nu < 0.0 || !(x > 0.0) || x > 700.0)
        throw std::domain_error("log_bessel_i: require nu >= 0 and 0 < x <= 700");
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100000; ++k) {
        term *= q / (static_cast<double>(k) * (nu + static_cast<double>(k)));
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return nu * std::log(0.5 * x) - ln_gamma(nu + 1.0) + std::log(sum);
}

double bessel_i(double nu, double x)
{
    if (nu < 0.0 || x < 0.0 || x > 50.0)
        throw std::domain_error("bessel_i: require nu >= 0 and 0 <= x <= 50");
    if (x == 0.0)
        return nu == 0.0 ? 1.0 : 0.0;
    return std::exp(log_bessel_i(nu, x));
}

double sphere_area(int n)
{
    if (n < 2)
        throw std::domain_error("sphere_area: require n >= 2");
    constexpr double log_pi = 1.1447298858494001741;
    return std::exp(std::log(2.0) + 0.5 * n * log_pi - ln_gamma(0.5 * n));
}

namespace {

// binom(a, b) in exact integer arithmetic; throws on 64-bit overflow.
std::int64_t binomial_exact(int a, int b)
{
    if (b < 0 || b > a)
        return 0;
    b = std::min(b, a - b);
    unsigned __int128 result = 1;
    for (int i = 1; i <= b; ++i) {
        result *= static_cast<unsigned>(a - b + i);
        result /= static_cast<unsigned>(i); // exact: C(a-b+i, i) is an integer
        if (result > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
            throw std::overflow_error("harmonic_dim: binomial exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(result);
}

} // namespace

std::int64_t harmonic_dim(int order, int n)
{
    if (order < 0)
        throw std::domain_error("harmonic_dim: order must be nonnegative");
    if (n < 3)
        throw std::domain_error("harmonic_dim: require n >= 3");
    const std::int64_t full = binomial_exact(order + n - 1, order);
    const std::int64_t excess = order >= 2 ? binomial_exact(order + n - 3, order - 2) : 0;
    return full - excess;
}

} // namespace dipole
