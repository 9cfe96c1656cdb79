#ifndef DIPOLE_BOUNDS_HPP
#define DIPOLE_BOUNDS_HPP

// Closed-form two-sided bounds for the critical coupling and for the lowest
// angular eigenvalue. All constants are computed at run time from pi and the
// special-function layer; nothing is hard-coded in decimal.

namespace dipole {

/// Analytic enclosure of the critical coupling in dimension n.
struct BoundsReport {
    int n;
    double gamma_lower;
    double gamma_upper;
    double hardy_floor; // (n-2)^2/4
};

/// gamma_upper = 15 pi [(n-2)(n-4)+4]/32;
/// gamma_lower = 1/4 (n=3), 1 (n=4), 3^{3/2}[(n-2)(n-4)+1]/8 (n>=5).
BoundsReport gamma_c_bounds(int n);

/// max(-gamma, -gamma^2/(n-1)^2); the tighter of the linear and quadratic
/// lower bounds on the lowest angular eigenvalue.
double lambda_lower_bound(int n, double gamma);

/// Bessel-ratio upper bound
///   -(gamma/2) I_{n/2}(2 gamma/(n-1)) / I_{(n-2)/2}(2 gamma/(n-1)),
/// strictly negative for gamma > 0.
double lambda_upper_bound(int n, double gamma);

/// The two trial-function integrals behind gamma_upper, evaluated by 128-node
/// Gauss-Legendre quadrature (trial function: 0 on [0,pi/2], sin 2t on
/// [pi/2,pi]), with implied_upper = denominator / numerator. Verifies the
/// quadrature against the closed forms 8/15 and pi[4+(n-2)(n-4)]/4 to 1e-10
/// and throws std::logic_error on disagreement.
struct TrialIntegrals {
    double numerator;
    double denominator;
    double implied_upper;
};

TrialIntegrals trial_function_integrals(int n);

} // namespace dipole

#endif
