#ifndef DIPOLE_SOLVE_HPP
#define DIPOLE_SOLVE_HPP

#include "dipole/operators.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Top of the numerical stack: lowest-angular-eigenvalue evaluation, critical
// coupling by two independent reductions, derivative diagnostics, truncation
// studies, and large-dimension asymptotics. Everything is derivative-free
// bisection; identical inputs give bit-identical outputs.

namespace dipole {

struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Analytic sandwich around a computed eigenvalue.
struct Sandwich {
    double lower;
    double upper;
};

/// Lowest angular eigenvalue at coupling gamma, with ground-state Gegenbauer
/// coefficients and the analytic sandwich.
struct LambdaResult {
    int n;
    double gamma;
    Eigen::Index m;
    double lambda;
    Eigen::VectorXd vector;
    Sandwich sandwich;
};

enum class CriticalMethod { DirectRootFind, CriticalK };

std::string to_string(CriticalMethod method);

/// Critical coupling estimate. bracket records the final root bracket for the
/// direct method; the critical-K method needs no root search and stores the
/// point estimate twice. bounds_ok flags containment in the analytic
/// enclosure (including the Hardy floor).
struct CriticalResult {
    int n;
    CriticalMethod method;
    Eigen::Index m;
    double gamma_c;
    std::pair<double, double> bracket;
    int iterations;
    bool bounds_ok;
};

/// Smallest eigenvalue of the direct reduction at (n, gamma), truncation m,
/// eigenvalue tolerance tol. gamma = 0 short-circuits to exactly 0 with the
/// pure degree-0 eigenvector.
LambdaResult lambda_min(int n, double gamma, Eigen::Index m, double tol);

/// Root of lambda(gamma) = -(n-2)^2/4 by bisection on gamma; the initial
/// bracket comes from the analytic bounds, is validated by sign evaluation,
/// and is widened by x1.5 steps (at most 10) if validation fails.
/// Enforces m >= 8. gamma resolved to gamma_tol.
CriticalResult critical_gamma_direct(int n, Eigen::Index m, double gamma_tol,
                                     double eigen_tol = 1e-13);

/// gamma_c = 1/|smallest eigenvalue of the m x m critical operator K|;
/// no root-finding loop. eigen_tol is relative to the operator norm, so the
/// coupling keeps its accuracy even as |lambda_min(K)| shrinks with n.
CriticalResult critical_gamma_via_k(int n, Eigen::Index m, double eigen_tol);

/// Solves lambda(gamma) = target for gamma when target < 0 (unique by strict
/// monotonicity); returns the exact root 0 when target = 0, and nullopt when
/// target > 0 (the eigenvalue is strictly negative for every positive
/// coupling). Enforces m >= 8.
std::optional<CriticalResult> critical_gamma_general(int n, double target_lambda,
                                                     Eigen::Index m, double gamma_tol,
                                                     double eigen_tol = 1e-13);

/// The coupling where essential self-adjointness of the full operator is
/// lost, i.e. where lambda(gamma) crosses -n(n-4)/4.
std::optional<CriticalResult> self_adjointness_threshold(int n, Eigen::Index m,
                                                         double gamma_tol);

/// d lambda / d gamma two ways: central finite difference with step h, and
/// the eigenvector expectation d^T J d of the coupling part of the matrix.
struct FhDerivatives {
    double finite_difference;
    double feynman_hellmann;
};

FhDerivatives feynman_hellmann(int n, double gamma, Eigen::Index m, double h);

/// Critical coupling via K at each truncation in ms (sorted ascending), with
/// the change from the previous row (NaN on the first row).
struct ConvergenceRow {
    Eigen::Index m;
    double gamma_c;
    double delta;
};

std::vector<ConvergenceRow> convergence_study(int n, const std::vector<Eigen::Index>& ms,
                                              double eigen_tol);

/// gamma_c / ((n-2)(n-4)) for each n >= 5; the final ratio estimates the
/// asymptotic constant of the large-n growth law.
struct AsymptoticRow {
    int n;
    double gamma_c;
    double ratio;
};

std::vector<AsymptoticRow> asymptotic_ratio(const std::vector<int>& ns, Eigen::Index m,
                                            double eigen_tol);

} // namespace dipole

#endif
