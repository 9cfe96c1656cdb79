#ifndef DIPOLE_QUADRATURE_HPP
#define DIPOLE_QUADRATURE_HPP

#include <Eigen/Core>

namespace dipole {

/// Nodes and weights of an interpolatory quadrature rule.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Legendre rule with npoints nodes on [-1, 1]; exact for polynomials
/// of degree <= 2 npoints - 1. Nodes by Newton iteration on P_n, so the rule
/// is fully deterministic.
QuadratureRule gauss_legendre(int npoints);

/// Gauss-Legendre rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int npoints, double a, double b);

} // namespace dipole

#endif
