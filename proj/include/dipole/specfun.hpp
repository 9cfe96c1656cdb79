#ifndef DIPOLE_SPECFUN_HPP
#define DIPOLE_SPECFUN_HPP

#include <cstdint>

// Self-contained special functions: log-Gamma, Pochhammer symbols, Gegenbauer
// (ultraspherical) polynomials and their weighted-space normalization,
// modified Bessel functions of the first kind, and sphere geometry constants.
// Everything here is a pure function of its arguments.

namespace dipole {

/// ln Gamma(x) for x > 0, relative error below 1e-13 (Lanczos approximation).
/// Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), computed as a direct product
/// so that nonpositive x never hits a Gamma pole. (x)_0 = 1.
double pochhammer(double x, int k);

/// Gegenbauer polynomial C_l^lambda(x) by the standard three-term recurrence
///   C_0 = 1,  C_1 = 2 lambda x,
///   (l+1) C_{l+1} = 2 (l+lambda) x C_l - (l+2 lambda-1) C_{l-1}.
double gegenbauer(int order, double index, double x);

/// Argument pack for the ultraspherical family used on the sphere, where the
/// index equals (n-2)/2 for space dimension n.
struct GegenbauerParams {
    int order = 0;       // l >= 0
    double index = 0.5;  // lambda > 0
    double argument = 0; // x in [-1, 1]
};

/// Validating wrapper; throws std::domain_error if the invariants
/// (order >= 0, index > 0, |argument| <= 1) fail.
double gegenbauer(const GegenbauerParams& params);

/// Normalization constant N_l such that N_l C_l^{(n-2)/2}(cos t) has unit norm
/// in L^2((0,pi); sin^{n-2} t dt):
///   N_l = [ l! (2l+n-2) / (2^{4-n} pi Gamma(l+n-2)) ]^{1/2} Gamma((n-2)/2).
/// Evaluated in log space; throws std::overflow_error if the result is not
/// representable as a double.
double gegenbauer_norm_const(int order, int n);

/// Modified Bessel function I_nu(x) by the ascending power series
///   sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)),
/// truncated when a term drops below 1e-17 of the partial sum.
/// Domain: nu >= 0, 0 <= x <= 50. Throws std::domain_error otherwise.
double bessel_i(double nu, double x);

/// log I_nu(x) for nu >= 0, 0 < x <= 700; immune to prefactor underflow,
/// intended for Bessel ratios at large order or argument.
double log_bessel_i(double nu, double x);

/// Surface area of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2), n >= 2.
double sphere_area(int n);

/// Dimension of the space of degree-l spherical harmonics in n >= 3 variables,
/// dim = binom(l+n-1, l) - binom(l+n-3, l-2), as an exact integer.
/// Throws std::overflow_error if the value exceeds the 64-bit range.
std::int64_t harmonic_dim(int order, int n);

} // namespace dipole

#endif
