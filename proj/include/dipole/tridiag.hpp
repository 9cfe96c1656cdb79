#ifndef DIPOLE_TRIDIAG_HPP
#define DIPOLE_TRIDIAG_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <utility>

// Symmetric tridiagonal eigensolver built on Sturm-sequence counting:
// bisection for selected eigenvalues, inverse iteration for eigenvectors,
// and a determinant recursion usable as an independent oracle on small
// matrices. No QR/QL path: everything is deterministic bisection.

namespace dipole {

/// Real symmetric tridiagonal matrix. offdiag[k] couples indices k and k+1.
struct SymTridiag {
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag; // size diag.size() - 1

    Eigen::Index size() const { return diag.size(); }
};

/// Eigenvalue with a unit eigenvector and the attained residual |T v - value v|_2.
struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Side { Min, Max };

/// Throws std::invalid_argument unless diag/offdiag sizes are consistent,
/// the matrix is nonempty, and all entries are finite.
void validate(const SymTridiag& T);

/// y = T x.
Eigen::VectorXd apply(const SymTridiag& T, const Eigen::VectorXd& x);

/// Gershgorin disc enclosure (lo, hi) of the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiag& T);

/// Number of eigenvalues strictly below x, by the shifted LDL^T pivot count
///   q_1 = diag[0] - x,  q_{k+1} = (diag[k] - x) - offdiag[k-1]^2 / q_k,
/// with exact zero pivots nudged to a tiny negative value so the count is
/// always defined.
Eigen::Index sturm_count(const SymTridiag& T, double x);

/// k-th smallest eigenvalue (0-based), to absolute accuracy tol, by bisection
/// on sturm_count inside the Gershgorin bracket.
double eigenvalue_k(const SymTridiag& T, Eigen::Index k, double tol);

/// Smallest or largest eigenvalue to absolute accuracy tol.
double extreme_eigenvalue(const SymTridiag& T, Side side, double tol);

/// Unit eigenvector for a known eigenvalue lambda by inverse iteration on the
/// deterministically detuned shift lambda + delta, delta = 1e-13 * scale.
/// Starts from the normalized all-ones vector; at most 50 iterations.
/// Throws NonConvergence if the residual never reaches tol.
EigenPair eigenvector_for(const SymTridiag& T, double lambda, double tol);

/// det(z I - T) by the three-term minor recursion. Oracle use only;
/// throws std::length_error for matrices larger than 64.
double charpoly_eval(const SymTridiag& T, double z);

} // namespace dipole

#endif
