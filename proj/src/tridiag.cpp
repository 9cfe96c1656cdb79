#include "dipole/tridiag.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dipole {

void validate(const SymTridiag& T)
{
    if (T.diag.size() < 1)
        throw std::invalid_argument("SymTridiag: matrix must be at least 1x1");
    if (T.offdiag.size() != T.diag.size() - 1)
        throw std::invalid_argument("SymTridiag: offdiag size must be diag size - 1");
    if (!T.diag.allFinite() || !T.offdiag.allFinite())
        throw std::invalid_argument("SymTridiag: entries must be finite");
}

Eigen::VectorXd apply(const SymTridiag& T, const Eigen::VectorXd& x)
{
    const Eigen::Index n = T.size();
    Eigen::VectorXd y = T.diag.cwiseProduct(x);
    if (n > 1) {
        y.head(n - 1) += T.offdiag.cwiseProduct(x.tail(n - 1));
        y.tail(n - 1) += T.offdiag.cwiseProduct(x.head(n - 1));
    }
    return y;
}

std::pair<double, double> gershgorin_bounds(const SymTridiag& T)
{
    validate(T);
    const Eigen::Index n = T.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
        double radius = 0.0;
        if (k > 0)
            radius += std::abs(T.offdiag[k - 1]);
        if (k + 1 < n)
            radius += std::abs(T.offdiag[k]);
        lo = std::min(lo, T.diag[k] - radius);
        hi = std::max(hi, T.diag[k] + radius);
    }
    return {lo, hi};
}

Eigen::Index sturm_count(const SymTridiag& T, double x)
{
    validate(T);
    const Eigen::Index n = T.size();
    Eigen::Index count = 0;
    double q = T.diag[0] - x;
    if (q == 0.0)
        q = -1e-300;
    if (q < 0.0)
        ++count;
    for (Eigen::Index k = 1; k < n; ++k) {
        q = (T.diag[k] - x) - T.offdiag[k - 1] * T.offdiag[k - 1] / q;
        if (q == 0.0)
            q = -1e-300;
        if (q < 0.0)
            ++count;
    }
    return count;
}

double eigenvalue_k(const SymTridiag& T, Eigen::Index k, double tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("eigenvalue_k: tol must be positive");
    if (k < 0 || k >= T.size())
        throw std::invalid_argument("eigenvalue_k: index out of range");
    auto [glo, ghi] = gershgorin_bounds(T);
    // Open the bracket slightly so both endpoints have definite counts.
    const double pad = 1e-8 * std::max({1.0, std::abs(glo), std::abs(ghi)});
    double lo = glo - pad;
    double hi = ghi + pad;
    for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // bracket exhausted at double resolution
        if (sturm_count(T, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double extreme_eigenvalue(const SymTridiag& T, Side side, double tol)
{
    return eigenvalue_k(T, side == Side::Min ? 0 : T.size() - 1, tol);
}

namespace {

// Solve (T - sigma I) y = rhs by Gaussian elimination with partial pivoting
// over the three bands (EISPACK tinvit layout). Zero pivots are nudged.
Eigen::VectorXd shifted_solve(const SymTridiag& T, double sigma, Eigen::VectorXd rhs,
                              double pivot_floor)
{
    const Eigen::Index n = T.size();
    Eigen::VectorXd main_band = T.diag.array() - sigma;
    Eigen::VectorXd upper1(n), upper2(n);
    upper1.setZero();
    upper2.setZero();
    for (Eigen::Index k = 0; k + 1 < n; ++k)
        upper1[k] = T.offdiag[k];

    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        double sub = T.offdiag[k]; // entry (k+1, k) before elimination
        if (std::abs(sub) > std::abs(main_band[k])) {
            std::swap(main_band[k], sub);
            std::swap(upper1[k], main_band[k + 1]);
            if (k + 2 < n)
                std::swap(upper2[k], upper1[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (main_band[k] == 0.0)
            main_band[k] = pivot_floor;
        const double mult = sub / main_band[k];
        main_band[k + 1] -= mult * upper1[k];
        if (k + 2 < n)
            upper1[k + 1] -= mult * upper2[k];
        rhs[k + 1] -= mult * rhs[k];
    }
    if (main_band[n - 1] == 0.0)
        main_band[n - 1] = pivot_floor;

    Eigen::VectorXd y(n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        double value = rhs[k];
        if (k + 1 < n)
            value -= upper1[k] * y[k + 1];
        if (k + 2 < n)
            value -= upper2[k] * y[k + 2];
        y[k] = value / main_band[k];
    }
    return y;
}

} // namespace

EigenPair eigenvector_for(const SymTridiag& T, double lambda, double tol)
{
    validate(T);
    if (!(tol > 0.0))
        throw std::invalid_argument("eigenvector_for: tol must be positive");
    const Eigen::Index n = T.size();
    const double scale = std::max({1.0, T.diag.cwiseAbs().maxCoeff(),
                                   n > 1 ? T.offdiag.cwiseAbs().maxCoeff() : 0.0});
    const double sigma = lambda + 1e-13 * scale;
    const double pivot_floor = std::numeric_limits<double>::epsilon() * scale;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    EigenPair best;
    best.value = lambda;
    best.residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 50; ++iter) {
        Eigen::VectorXd y = shifted_solve(T, sigma, v, pivot_floor);
        const double norm = y.norm();
        if (!(norm > 0.0) || !y.allFinite())
            break;
        v = y / norm;
        const double residual = (apply(T, v) - lambda * v).norm();
        if (residual < best.residual) {
            best.vector = v;
            best.residual = residual;
        }
        // A short minimum of sweeps lets the iterate settle on the rounding
        // floor instead of the first sub-tolerance value.
        if (iter >= 2 && best.residual <= tol)
            return best;
    }
    if (best.residual <= tol)
        return best;
    throw NonConvergence("eigenvector_for: residual " + std::to_string(best.residual)
                         + " above tolerance after 50 iterations");
}

double charpoly_eval(const SymTridiag& T, double z)
{
    validate(T);
    const Eigen::Index n = T.size();
    if (n > 64)
        throw std::length_error("charpoly_eval: oracle limited to N <= 64");
    double prev = 1.0;
    double curr = z - T.diag[0];
    for (Eigen::Index k = 1; k < n; ++k) {
        const double next =
            (z - T.diag[k]) * curr - T.offdiag[k - 1] * T.offdiag[k - 1] * prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

} // namespace dipole
