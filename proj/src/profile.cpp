#include "dipole/profile.hpp"

#include "dipole/quadrature.hpp"
#include "dipole/solve.hpp"
#include "dipole/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dipole {

namespace {

constexpr int kNormQuadratureNodes = 256;

// Psi(arccos xi) = sum_l c_l N_l C_l^{(n-2)/2}(xi) for a batch of xi values.
Eigen::VectorXd evaluate_expansion(const Eigen::VectorXd& coeffs, int n,
                                   const Eigen::VectorXd& xi,
                                   const Eigen::VectorXd& degree_scale)
{
    const Eigen::Index m = coeffs.size();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(xi.size());
    const double index = 0.5 * (n - 2.0);
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
        const double x = xi[i];
        double prev = 1.0;            // C_0
        double curr = 2.0 * index * x; // C_1
        double acc = coeffs[0] * degree_scale[0];
        for (Eigen::Index l = 1; l < m; ++l) {
            acc += coeffs[l] * degree_scale[l] * curr;
            const double next = (2.0 * (l + index) * x * curr
                                 - (l + 2.0 * index - 1.0) * prev) / (l + 1.0);
            prev = curr;
            curr = next;
        }
        values[i] = acc;
    }
    return values;
}

Eigen::VectorXd norm_constants(int n, Eigen::Index m)
{
    Eigen::VectorXd scale(m);
    for (Eigen::Index l = 0; l < m; ++l)
        scale[l] = gegenbauer_norm_const(static_cast<int>(l), n);
    return scale;
}

// Weighted inner products are evaluated in the angle variable, where the
// integrand is analytic for every dimension (in xi = cos theta the weight
// (1 - xi^2)^{(n-3)/2} has endpoint singularities for even n that stall
// Gauss-Legendre convergence).
QuadratureRule angular_rule()
{
    return gauss_legendre(kNormQuadratureNodes, 0.0, std::numbers::pi);
}

double weighted_norm_squared(const Eigen::VectorXd& coeffs, int n,
                             const Eigen::VectorXd& degree_scale)
{
    const QuadratureRule rule = angular_rule();
    const Eigen::VectorXd xi = rule.nodes.array().cos().matrix();
    const Eigen::VectorXd values = evaluate_expansion(coeffs, n, xi, degree_scale);
    double norm_sq = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double weight = std::pow(std::sin(rule.nodes[i]), n - 2.0);
        norm_sq += rule.weights[i] * weight * values[i] * values[i];
    }
    return norm_sq;
}

} // namespace

ProfileSamples reconstruct_psi(int n, double gamma, Eigen::Index m, int grid_size)
{
    if (grid_size < 16)
        throw std::invalid_argument("reconstruct_psi: require grid_size >= 16");

    const LambdaResult ground = lambda_min(n, gamma, m, 1e-13);

    ProfileSamples samples;
    samples.n = n;
    samples.gamma = gamma;
    samples.m = m;
    samples.lambda = ground.lambda;
    samples.coeffs = ground.vector;

    samples.theta.resize(grid_size);
    for (int k = 0; k < grid_size; ++k)
        samples.theta[k] = std::numbers::pi * (k + 0.5) / grid_size;

    const Eigen::VectorXd degree_scale = norm_constants(n, m);

    // Normalize the coefficient vector by the quadrature norm; the basis is
    // orthonormal in the weighted space, so this is a near-identity rescale.
    const double norm = std::sqrt(weighted_norm_squared(samples.coeffs, n, degree_scale));
    samples.coeffs /= norm;

    const Eigen::VectorXd xi = samples.theta.array().cos().matrix();
    samples.psi = evaluate_expansion(samples.coeffs, n, xi, degree_scale);

    // Global sign: make the band around theta = pi/2 positive.
    double mid_mass = 0.0;
    for (int k = 0; k < grid_size; ++k)
        if (std::abs(samples.theta[k] - 0.5 * std::numbers::pi) < 0.125 * std::numbers::pi)
            mid_mass += samples.psi[k];
    if (mid_mass < 0.0) {
        samples.psi = -samples.psi;
        samples.coeffs = -samples.coeffs;
    }

    samples.weighted_norm = std::sqrt(weighted_norm_squared(samples.coeffs, n, degree_scale));
    samples.ode_residual_linf = ode_residual(samples);
    return samples;
}

double ode_residual(const ProfileSamples& samples)
{
    const Eigen::Index grid = samples.theta.size();
    if (grid < 16)
        throw std::invalid_argument("ode_residual: require at least 16 grid points");
    const double h = samples.theta[1] - samples.theta[0];

    const double psi_max = samples.psi.cwiseAbs().maxCoeff();
    if (!(psi_max > 0.0))
        return 0.0;

    double worst = 0.0;
    for (Eigen::Index i = 2; i + 2 < grid; ++i) {
        const double theta = samples.theta[i];
        if (theta < 0.15 || theta > std::numbers::pi - 0.15)
            continue;
        const double d1 = (-samples.psi[i + 2] + 8.0 * samples.psi[i + 1]
                           - 8.0 * samples.psi[i - 1] + samples.psi[i - 2]) / (12.0 * h);
        const double d2 = (-samples.psi[i + 2] + 16.0 * samples.psi[i + 1]
                           - 30.0 * samples.psi[i] + 16.0 * samples.psi[i - 1]
                           - samples.psi[i - 2]) / (12.0 * h * h);
        const double residual = -d2 - (samples.n - 2.0) * (std::cos(theta) / std::sin(theta)) * d1
            + samples.gamma * std::cos(theta) * samples.psi[i]
            - samples.lambda * samples.psi[i];
        worst = std::max(worst, std::abs(residual));
    }
    return worst / psi_max;
}

double spectral_residual(const ProfileSamples& samples)
{
    const SymTridiag T = build_direct({samples.n, samples.gamma}, samples.m);
    const Eigen::VectorXd c = samples.coeffs / samples.coeffs.norm();
    return (apply(T, c) - samples.lambda * c).norm();
}

double rayleigh_quotient(const ProfileSamples& samples)
{
    const int n = samples.n;
    const Eigen::Index m = samples.m;
    const Eigen::VectorXd degree_scale = norm_constants(n, m);

    // Apply the angular operator term by term: each basis term is a
    // Laplace-Beltrami eigenfunction with eigenvalue l(l+n-2), and the
    // potential is a multiplication by gamma xi.
    Eigen::VectorXd beltrami_coeffs(m);
    for (Eigen::Index l = 0; l < m; ++l)
        beltrami_coeffs[l] =
            samples.coeffs[l] * static_cast<double>(l) * (static_cast<double>(l) + n - 2.0);

    const QuadratureRule rule = angular_rule();
    const Eigen::VectorXd xi = rule.nodes.array().cos().matrix();
    const Eigen::VectorXd psi = evaluate_expansion(samples.coeffs, n, xi, degree_scale);
    const Eigen::VectorXd beltrami_psi =
        evaluate_expansion(beltrami_coeffs, n, xi, degree_scale);

    double numerator = 0.0;
    double denominator = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double weight = rule.weights[i] * std::pow(std::sin(rule.nodes[i]), n - 2.0);
        const double applied = beltrami_psi[i] + samples.gamma * xi[i] * psi[i];
        numerator += weight * psi[i] * applied;
        denominator += weight * psi[i] * psi[i];
    }
    return numerator / denominator;
}

} // namespace dipole
