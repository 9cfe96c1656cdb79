#ifndef DIPOLE_OPERATORS_HPP
#define DIPOLE_OPERATORS_HPP

#include "dipole/tridiag.hpp"

#include <Eigen/Core>

// Builders for the angular dipole problem in the zonal Gegenbauer basis.
// Row l of every matrix corresponds to Gegenbauer degree l (starting at 0),
// and offdiag[k] couples degrees k and k+1; tests pin this convention.
//
// Two reductions of the same pencil J d = -(1/gamma) w d are provided:
//   - direct:     (D + gamma J) d = lambda d with D = diag(l(l+n-2)), valid
//                 for any coupling, no self-consistency loop;
//   - critical-K: with lambda pinned at -(n-2)^2/4 the weights w_l become
//                 coupling-free and K = w^{-1/2} J w^{-1/2} has smallest
//                 eigenvalue -1/gamma_c.

namespace dipole {

/// Space dimension and dipole coupling strength.
struct DipoleProblem {
    int n;
    double gamma;
};

/// Parameters of the critical compact operator K truncated to m x m.
/// lambda_pinned is always exactly -(n-2)^2/4.
struct CriticalOperatorSpec {
    int n;
    double lambda_pinned;
    Eigen::Index m;

    static CriticalOperatorSpec make(int n, Eigen::Index m);
};

/// Off-diagonal entry a_l = sqrt( l(l+n-3) / ((2l+n-4)(2l+n-2)) ), l >= 1.
/// Throws std::domain_error for l = 0 (the first matrix row starts with a_1).
double offdiag_a(int ell, int n);

/// Weight w_l = l(l+n-2) - lambda.
double weight_w(int ell, int n, double lambda);

/// m x m matrix of the direct reduction: diag[l] = l(l+n-2),
/// offdiag[l-1] = gamma a_l. Its smallest eigenvalue approximates the lowest
/// angular eigenvalue from above as m grows.
SymTridiag build_direct(const DipoleProblem& problem, Eigen::Index m);

/// m x m truncation of K at criticality: zero diagonal,
/// offdiag[l-1] = a_l / sqrt(w_l w_{l-1}) with lambda pinned at -(n-2)^2/4.
SymTridiag build_critical_k(const CriticalOperatorSpec& spec);

/// The sequence l^2 atilde_l for l = 1..ell_max; bounded tails witness the
/// O(l^-2) decay of the K entries.
Eigen::VectorXd atilde_decay_check(int n, int ell_max);

/// Operator-norm bound 2 max_l atilde_l at criticality with the maximizing
/// index, located by direct scan. r_stationary is the real stationary point
/// of l -> atilde_l treated as a continuous variable (NaN when complex, as
/// happens for n = 3); it is metadata only, the scan is authoritative.
/// For n = 3 the bound evaluates to 8/3^{3/2} = 2 atilde_1; note the entry
/// atilde_1 itself is 4/3^{3/2}.
struct NormBound {
    double bound;
    int argmax_ell;
    double r_stationary;
};

NormBound norm_bound(int n);

} // namespace dipole

#endif
