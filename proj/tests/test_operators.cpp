#include "dipole/operators.hpp"

#include "dipole/quadrature.hpp"
#include "dipole/solve.hpp"
#include "dipole/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dipole;

TEST_CASE("off-diagonal entries")
{
    CHECK(offdiag_a(1, 3) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(offdiag_a(2, 3) == doctest::Approx(2.0 / std::sqrt(15.0)).epsilon(1e-15));
    CHECK(offdiag_a(1, 4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(offdiag_a(0, 3), std::domain_error);
    for (int n = 3; n <= 12; ++n)
        for (int l = 1; l <= 50; ++l)
            CHECK(offdiag_a(l, n) > 0.0);
}

TEST_CASE("weights")
{
    CHECK(weight_w(0, 3, -0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(weight_w(1, 3, -0.25) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(weight_w(0, 7, 0.0) == 0.0);
}

TEST_CASE("direct reduction matrices")
{
    // Indexing convention: row l is Gegenbauer degree l, offdiag[k] couples
    // degrees k and k+1.
    const SymTridiag free_sphere = build_direct({3, 0.0}, 3);
    CHECK(free_sphere.diag[0] == 0.0);
    CHECK(free_sphere.diag[1] == 2.0);
    CHECK(free_sphere.diag[2] == 6.0);
    CHECK(free_sphere.offdiag[0] == 0.0);
    CHECK(free_sphere.offdiag[1] == 0.0);

    const SymTridiag coupled = build_direct({3, 1.0}, 2);
    CHECK(coupled.offdiag[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(extreme_eigenvalue(coupled, Side::Min, 1e-13)
          == doctest::Approx(1.0 - std::sqrt(4.0 / 3.0)).epsilon(1e-12));

    const SymTridiag five = build_direct({5, 2.0}, 2);
    CHECK(five.diag[1] == 4.0);
    CHECK(five.offdiag[0] == doctest::Approx(2.0 * std::sqrt(3.0 / 15.0)).epsilon(1e-14));
}

TEST_CASE("jacobi entries equal weighted inner products of neighboring modes")
{
    // a_l = <N_l C_l, cos(theta) N_{l-1} C_{l-1}> in the sphere-weighted
    // space: an oracle independent of the closed form.
    const QuadratureRule rule = gauss_legendre(256, 0.0, std::numbers::pi);
    for (const int n : {3, 4, 5, 8}) {
        const double index = 0.5 * (n - 2.0);
        for (int l = 1; l <= 6; ++l) {
            double inner = 0.0;
            for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
                const double xi = std::cos(rule.nodes[i]);
                const double w = rule.weights[i] * std::pow(std::sin(rule.nodes[i]), n - 2.0);
                inner += w * xi * gegenbauer(l, index, xi) * gegenbauer(l - 1, index, xi);
            }
            inner *= gegenbauer_norm_const(l, n) * gegenbauer_norm_const(l - 1, n);
            CHECK(inner == doctest::Approx(offdiag_a(l, n)).epsilon(1e-11));
        }
    }
}

TEST_CASE("laplace-beltrami spectrum at zero coupling")
{
    for (int n = 3; n <= 10; ++n) {
        const SymTridiag T = build_direct({n, 0.0}, 8);
        for (Eigen::Index l = 0; l < 8; ++l)
            CHECK(T.diag[l] == static_cast<double>(l) * (static_cast<double>(l) + n - 2.0));
    }
}

TEST_CASE("critical operator entries")
{
    const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(3, 2));
    CHECK(K.diag[0] == 0.0);
    CHECK(K.diag[1] == 0.0);
    CHECK(K.offdiag[0] == doctest::Approx(4.0 / std::pow(3.0, 1.5)).epsilon(1e-15));

    // n = 4: hardy floor 1, w_0 = 1, w_1 = 4, a_1 = 1/2.
    const SymTridiag K4 = build_critical_k(CriticalOperatorSpec::make(4, 2));
    CHECK(K4.offdiag[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("spec factory pins the critical eigenvalue")
{
    const CriticalOperatorSpec spec = CriticalOperatorSpec::make(7, 16);
    CHECK(spec.lambda_pinned == -0.25 * 25.0);
    CriticalOperatorSpec tampered = spec;
    tampered.lambda_pinned = -6.0;
    CHECK_THROWS_AS(build_critical_k(tampered), std::invalid_argument);
    CHECK_THROWS_AS(CriticalOperatorSpec::make(2, 4), std::domain_error);
    CHECK_THROWS_AS(CriticalOperatorSpec::make(3, 1), std::invalid_argument);
}

TEST_CASE("atilde decay l^2 scaling stays bounded")
{
    const Eigen::VectorXd scaled3 = atilde_decay_check(3, 10000);
    for (Eigen::Index i = 0; i < scaled3.size(); ++i) {
        CHECK(scaled3[i] > 0.0);
        CHECK(scaled3[i] <= 2.0);
    }
    // n = 3 closed form: atilde_l = l / ((l^2 - 1/4) sqrt(4 l^2 - 1)),
    // so l^2 atilde_l tends to 1/2.
    CHECK(scaled3[scaled3.size() - 1] == doctest::Approx(0.5).epsilon(1e-5));

    const Eigen::VectorXd scaled4 = atilde_decay_check(4, 2000);
    const double tail = scaled4[scaled4.size() - 1];
    const double tail_prev = scaled4[scaled4.size() - 2];
    CHECK(std::abs(tail - tail_prev) < 1e-5);
}

TEST_CASE("n=3 critical entries match their closed form")
{
    const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(3, 40));
    for (Eigen::Index idx = 0; idx < K.offdiag.size(); ++idx) {
        const double l = static_cast<double>(idx + 1);
        const double expected = l / ((l * l - 0.25) * std::sqrt(4.0 * l * l - 1.0));
        CHECK(K.offdiag[idx] == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("norm bound locates the maximizing entry")
{
    const NormBound three = norm_bound(3);
    CHECK(three.bound == doctest::Approx(8.0 / std::pow(3.0, 1.5)).epsilon(1e-14));
    CHECK(three.argmax_ell == 1);
    CHECK(std::isnan(three.r_stationary)); // stationary point is complex for n = 3

    const NormBound five = norm_bound(5);
    CHECK(five.argmax_ell == 1);
    CHECK(five.r_stationary == doctest::Approx(0.25 * (-4.0 + std::sqrt(22.0))).epsilon(1e-14));

    // r(4) sits exactly at 0; the scan is authoritative either way.
    const NormBound four = norm_bound(4);
    CHECK(four.r_stationary == doctest::Approx(0.0));
    CHECK(four.argmax_ell >= 1);

    for (int n = 3; n <= 12; ++n) {
        const NormBound bound = norm_bound(n);
        const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, 2));
        CHECK(bound.bound >= 2.0 * K.offdiag[0]);
    }
}

TEST_CASE("norm bound dominates the truncated spectral radius")
{
    for (int n = 3; n <= 10; ++n) {
        const NormBound bound = norm_bound(n);
        for (const Eigen::Index m : {2, 5, 12, 32}) {
            const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, m));
            const double lambda = extreme_eigenvalue(K, Side::Min, 1e-12);
            CHECK(std::abs(lambda) <= bound.bound + 1e-12);
        }
    }
}

TEST_CASE("truncated critical spectra are negation symmetric with a zero mode when odd")
{
    for (int n = 3; n <= 10; ++n) {
        for (Eigen::Index m = 2; m <= 12; ++m) {
            const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, m));
            for (Eigen::Index k = 0; k < m; ++k) {
                const double low = eigenvalue_k(K, k, 1e-12);
                const double high = eigenvalue_k(K, m - 1 - k, 1e-12);
                CHECK(std::abs(low + high) <= 1e-10);
            }
            if (m % 2 == 1)
                CHECK(std::abs(eigenvalue_k(K, m / 2, 1e-12)) <= 1e-10);
        }
    }
}

TEST_CASE("uniform lower bound: gamma_c K_m >= -1 at criticality")
{
    for (int n = 3; n <= 10; ++n) {
        const double gamma_c = critical_gamma_via_k(n, 32, 1e-13).gamma_c;
        for (const Eigen::Index m : {2, 3, 5, 8, 12, 32}) {
            const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, m));
            const double lambda = extreme_eigenvalue(K, Side::Min, 1e-13);
            CHECK(gamma_c * lambda >= -1.0 - 1e-9);
        }
    }
}

TEST_CASE("norm bound dominates the reciprocal critical coupling")
{
    for (int n = 3; n <= 12; ++n) {
        const double gamma_c = critical_gamma_via_k(n, 32, 1e-13).gamma_c;
        CHECK(norm_bound(n).bound >= 1.0 / gamma_c);
    }
}

TEST_CASE("nonzero couplings keep the truncated spectra simple")
{
    // All off-diagonal entries are positive, so consecutive eigenvalues of
    // the production matrices stay strictly separated.
    for (const int n : {3, 7}) {
        const SymTridiag K = build_critical_k(CriticalOperatorSpec::make(n, 12));
        double previous = eigenvalue_k(K, 0, 1e-13);
        for (Eigen::Index k = 1; k < 12; ++k) {
            const double current = eigenvalue_k(K, k, 1e-13);
            CHECK(current > previous + 1e-8);
            previous = current;
        }
        const SymTridiag T = build_direct({n, 2.5}, 12);
        previous = eigenvalue_k(T, 0, 1e-13);
        for (Eigen::Index k = 1; k < 12; ++k) {
            const double current = eigenvalue_k(T, k, 1e-13);
            CHECK(current > previous + 1e-8);
            previous = current;
        }
    }
}

TEST_CASE("direct reduction eigenvalues interlace as the truncation grows")
{
    for (int n = 3; n <= 6; ++n) {
        double previous = 1.0;
        for (Eigen::Index m = 2; m <= 24; ++m) {
            const SymTridiag T = build_direct({n, 1.5}, m);
            const double lambda = extreme_eigenvalue(T, Side::Min, 1e-13);
            if (m > 2)
                CHECK(lambda <= previous + 1e-13);
            previous = lambda;
        }
    }
}
