#include "dipole/tridiag.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace dipole;

namespace {

SymTridiag make(std::vector<double> diag, std::vector<double> offdiag)
{
    SymTridiag T;
    T.diag = Eigen::Map<Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
    T.offdiag =
        Eigen::Map<Eigen::VectorXd>(offdiag.data(), static_cast<Eigen::Index>(offdiag.size()));
    return T;
}

} // namespace

TEST_CASE("gershgorin discs")
{
    auto [lo, hi] = gershgorin_bounds(make({0.0, 2.0}, {0.5}));
    CHECK(lo == -0.5);
    CHECK(hi == 2.5);

    auto [lo1, hi1] = gershgorin_bounds(make({7.0}, {}));
    CHECK(lo1 == 7.0);
    CHECK(hi1 == 7.0);

    auto [lo2, hi2] = gershgorin_bounds(make({0.0, 0.0, 0.0}, {1.0, 1.0}));
    CHECK(lo2 == -2.0);
    CHECK(hi2 == 2.0);
}

TEST_CASE("sturm counts on a diagonal matrix")
{
    const SymTridiag T = make({0.0, 2.0, 6.0}, {0.0, 0.0});
    CHECK(sturm_count(T, 1.0) == 1);
    CHECK(sturm_count(T, 7.0) == 3);
    CHECK(sturm_count(T, -1.0) == 0);
}

TEST_CASE("sturm count at the symmetry point of a zero-diagonal matrix")
{
    // Eigenvalues are +-a, so exactly one lies strictly below 0.
    for (const double a : {0.3, 1.0, 4.0}) {
        const SymTridiag T = make({0.0, 0.0}, {a});
        CHECK(sturm_count(T, 0.0) == 1);
    }
}

TEST_CASE("sturm consistency and monotonicity on the gershgorin bracket")
{
    const SymTridiag T = make({1.0, -2.0, 0.5, 3.0}, {0.7, 1.3, -0.2});
    auto [lo, hi] = gershgorin_bounds(T);
    CHECK(sturm_count(T, lo - 1.0) == 0);
    CHECK(sturm_count(T, hi + 1.0) == 4);
    Eigen::Index previous = 0;
    for (double x = lo - 1.0; x <= hi + 1.0; x += 0.05) {
        const Eigen::Index count = sturm_count(T, x);
        CHECK(count >= previous);
        previous = count;
    }
}

TEST_CASE("extreme eigenvalues of closed-form matrices")
{
    // 2x2: (a+d)/2 -+ sqrt(((a-d)/2)^2 + b^2).
    const SymTridiag T = make({0.0, 2.0}, {1.0 / std::sqrt(3.0)});
    const double expected = 1.0 - std::sqrt(1.0 + 1.0 / 3.0);
    CHECK(extreme_eigenvalue(T, Side::Min, 1e-13)
          == doctest::Approx(expected).epsilon(1e-12));
    CHECK(extreme_eigenvalue(T, Side::Max, 1e-13)
          == doctest::Approx(1.0 + std::sqrt(4.0 / 3.0)).epsilon(1e-12));

    CHECK(extreme_eigenvalue(make({5.0}, {}), Side::Min, 1e-13)
          == doctest::Approx(5.0).epsilon(1e-12));

    const SymTridiag Z = make({0.0, 0.0, 0.0}, {0.8, 0.6});
    CHECK(extreme_eigenvalue(Z, Side::Min, 1e-13) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue_k sweeps the whole spectrum in order")
{
    const SymTridiag T = make({1.0, -2.0, 0.5, 3.0, 0.0}, {0.7, 1.3, 0.2, 2.0});
    std::vector<double> eigenvalues;
    for (Eigen::Index k = 0; k < T.size(); ++k)
        eigenvalues.push_back(eigenvalue_k(T, k, 1e-13));
    for (std::size_t i = 1; i < eigenvalues.size(); ++i)
        CHECK(eigenvalues[i] >= eigenvalues[i - 1]);
    // Eigenvalue sum equals the trace.
    double sum = 0.0;
    for (const double value : eigenvalues)
        sum += value;
    CHECK(sum == doctest::Approx(T.diag.sum()).epsilon(1e-10));
}

TEST_CASE("zero-diagonal spectra are symmetric under negation")
{
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> entry(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index size = 2 + static_cast<Eigen::Index>(rng() % 7);
        SymTridiag T;
        T.diag = Eigen::VectorXd::Zero(size);
        T.offdiag.resize(size - 1);
        for (Eigen::Index i = 0; i + 1 < size; ++i)
            T.offdiag[i] = entry(rng);
        for (Eigen::Index k = 0; k < size; ++k) {
            const double low = eigenvalue_k(T, k, 1e-12);
            const double high = eigenvalue_k(T, size - 1 - k, 1e-12);
            CHECK(low == doctest::Approx(-high).epsilon(1e-10));
        }
        // Count-pattern form of the same statement: for x outside the
        // spectrum, eigenvalues below -x pair off with eigenvalues above +x,
        // so sturm_count(-x) = N - sturm_count(x).
        for (const double x : {0.0314159, 0.2718281, 0.9, 1.7320508})
            CHECK(sturm_count(T, -x) == size - sturm_count(T, x));
    }
}

TEST_CASE("inverse iteration on decoupled and coupled matrices")
{
    SUBCASE("decoupled eigenvector is a coordinate axis")
    {
        const EigenPair pair = eigenvector_for(make({0.0, 2.0}, {0.0}), 2.0, 1e-10);
        CHECK(std::abs(pair.vector[0]) < 1e-12);
        CHECK(std::abs(pair.vector[1]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pair.residual <= 1e-10);
    }
    SUBCASE("2x2 hand solve")
    {
        const EigenPair pair = eigenvector_for(make({0.0, 0.0}, {1.0}), -1.0, 1e-10);
        CHECK(std::abs(pair.vector[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
        CHECK(pair.vector[0] * pair.vector[1] < 0.0);
        CHECK(pair.residual <= 1e-12);
    }
    SUBCASE("degenerate identity block accepts any unit vector")
    {
        const EigenPair pair = eigenvector_for(make({1.0, 1.0, 1.0}, {0.0, 0.0}), 1.0, 1e-10);
        CHECK(pair.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pair.residual <= 1e-10);
    }
    SUBCASE("non-eigenvalue fails to converge")
    {
        CHECK_THROWS_AS(eigenvector_for(make({0.0, 2.0}, {0.0}), 0.7, 1e-10), NonConvergence);
    }
}

TEST_CASE("inverse iteration residuals on a random spectrum")
{
    std::mt19937 rng(77u);
    std::uniform_real_distribution<double> entry(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        SymTridiag T;
        const Eigen::Index size = 12;
        T.diag.resize(size);
        T.offdiag.resize(size - 1);
        for (Eigen::Index i = 0; i < size; ++i)
            T.diag[i] = entry(rng);
        for (Eigen::Index i = 0; i + 1 < size; ++i)
            T.offdiag[i] = entry(rng) + 1.6; // keep off-diagonals away from zero
        const double lambda = extreme_eigenvalue(T, Side::Min, 1e-13);
        const EigenPair pair = eigenvector_for(T, lambda, 1e-9);
        CHECK(pair.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pair.residual <= 1e-11);
    }
}

TEST_CASE("charpoly closed forms")
{
    const double a1 = 0.8;
    SUBCASE("2x2")
    {
        for (const double z : {-1.0, -0.3, 0.0, 0.4, 2.0})
            CHECK(charpoly_eval(make({0.0, 0.0}, {a1}), z)
                  == doctest::Approx(z * z - a1 * a1).epsilon(1e-14));
    }
    SUBCASE("4x4")
    {
        const double a2 = 0.5, a3 = 0.3;
        const SymTridiag T = make({0.0, 0.0, 0.0, 0.0}, {a1, a2, a3});
        for (const double z : {-1.2, -0.4, 0.0, 0.7, 1.5}) {
            const double expected = std::pow(z, 4)
                - (a1 * a1 + a2 * a2 + a3 * a3) * z * z + a1 * a1 * a3 * a3;
            CHECK(charpoly_eval(T, z) == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("monic positivity beyond the spectrum")
    {
        const SymTridiag T = make({1.0, -2.0, 0.5}, {0.7, 1.3});
        auto [lo, hi] = gershgorin_bounds(T);
        CHECK(charpoly_eval(T, hi + 1.0) > 0.0);
        CHECK(charpoly_eval(T, hi + 10.0) > 0.0);
        (void)lo;
    }
    SUBCASE("size guard")
    {
        SymTridiag big;
        big.diag = Eigen::VectorXd::Zero(65);
        big.offdiag = Eigen::VectorXd::Ones(64);
        CHECK_THROWS_AS(charpoly_eval(big, 0.0), std::length_error);
    }
}

TEST_CASE("bisection eigenvalues agree with charpoly roots on zero-diagonal matrices")
{
    // N = 2..5 closed forms from the determinant recursion.
    std::mt19937 rng(1234u);
    std::uniform_real_distribution<double> entry(0.2, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index size = 2 + static_cast<Eigen::Index>(rng() % 4);
        SymTridiag T;
        T.diag = Eigen::VectorXd::Zero(size);
        T.offdiag.resize(size - 1);
        for (Eigen::Index i = 0; i + 1 < size; ++i)
            T.offdiag[i] = entry(rng);
        for (Eigen::Index k = 0; k < size; ++k) {
            const double lambda = eigenvalue_k(T, k, 1e-12);
            CHECK(std::abs(charpoly_eval(T, lambda)) < 1e-10);
        }
    }
}

TEST_CASE("validation rejects malformed matrices")
{
    SymTridiag bad;
    bad.diag = Eigen::VectorXd::Zero(3);
    bad.offdiag = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    SymTridiag empty;
    CHECK_THROWS_AS(validate(empty), std::invalid_argument);
}
