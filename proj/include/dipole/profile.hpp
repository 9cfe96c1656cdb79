#ifndef DIPOLE_PROFILE_HPP
#define DIPOLE_PROFILE_HPP

#include <Eigen/Core>

// Reconstruction of the angular ground-state profile from its Gegenbauer
// coefficients, normalization in L^2((0,pi); sin^{n-2} t dt), and two
// independent residual checks of the angular eigenvalue equation
//   -psi'' - (n-2) cot(t) psi' + gamma cos(t) psi = lambda psi.

namespace dipole {

/// Samples of the normalized angular ground state on the midpoint grid
/// theta_k = pi (k+1/2) / grid_size, with the expansion coefficients kept for
/// spectral diagnostics.
struct ProfileSamples {
    int n = 0;
    double gamma = 0.0;
    Eigen::Index m = 0;
    Eigen::VectorXd theta;
    Eigen::VectorXd psi;
    Eigen::VectorXd coeffs;
    double lambda = 0.0;
    double weighted_norm = 0.0;
    double ode_residual_linf = 0.0;
};

/// Solves for the ground state at (n, gamma) with truncation m, samples the
/// profile on grid_size >= 16 midpoints, normalizes it to unit weighted norm
/// (256-node Gauss-Legendre in the angle with sin^{n-2} folded into the
/// integrand), and fixes the global sign so the region around theta = pi/2
/// is positive.
ProfileSamples reconstruct_psi(int n, double gamma, Eigen::Index m, int grid_size);

/// Finite-difference residual of the angular ODE: fourth-order central
/// stencils on the uniform grid, restricted to theta in [0.15, pi - 0.15]
/// to stay away from the cot singularities; L-infinity norm relative to
/// max |psi|. Requires grid_size >= 16 (>= 64 for a meaningful error level).
double ode_residual(const ProfileSamples& samples);

/// Coefficient-space residual |T c - lambda c|_2 of the truncated eigenvalue
/// problem, independent of any grid.
double spectral_residual(const ProfileSamples& samples);

/// Weighted Rayleigh quotient of the sampled profile, evaluated by quadrature
/// with the operator applied term-by-term in the Gegenbauer expansion.
/// Agrees with samples.lambda to quadrature accuracy.
double rayleigh_quotient(const ProfileSamples& samples);

} // namespace dipole

#endif
