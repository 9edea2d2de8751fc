#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "logreg/numerics.hpp"
#include "support/oracles.hpp"

using namespace logreg;

namespace {

double residual_norm(const Matrix& a, const Vector& x, const Vector& b) {
    return (a * x - b).norm2();
}

// Random PSD matrix G'G with G of the given rank.
Matrix random_psd(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::vector<double> g(rank * n);
    for (auto& v : g) v = normal(rng);
    Matrix gm(rank, n, g);
    Matrix a = gm.transpose() * gm;
    // Exact symmetry.
    std::vector<double> sym(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym[i * n + j] = 0.5 * (a(i, j) + a(j, i));
    return Matrix(n, n, sym);
}

}  // namespace

TEST_CASE("Vector and Matrix reject empty shapes and non-finite entries") {
    CHECK_THROWS_AS(Vector(std::vector<double>{}), DimensionError);
    CHECK_THROWS_AS(Vector({1.0, NAN}), NonFiniteError);
    CHECK_THROWS_AS(Vector({INFINITY}), NonFiniteError);
    CHECK_THROWS_AS(Matrix(0, 3, {}), DimensionError);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {3.0}}), DimensionError);
    CHECK_THROWS_AS(Matrix({{1.0, NAN}}), NonFiniteError);
}

TEST_CASE("matrix helpers") {
    const Matrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.transpose() == Matrix{{1, 4}, {2, 5}, {3, 6}});
    const std::vector<std::size_t> cols{2, 0};
    CHECK(m.select_columns(cols) == Matrix{{3, 1}, {6, 4}});
    const std::vector<std::size_t> rows{1};
    CHECK(m.select_rows(rows) == Matrix{{4, 5, 6}});
    CHECK(m * Vector{1, 1, 1} == Vector{6, 15});
    CHECK(Vector{3, 4}.norm2() == doctest::Approx(5.0));
    CHECK(Vector{1e200, 1e200}.norm2() == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("solve_psd: worked examples") {
    SUBCASE("identity") {
        const Vector x = solve_psd(Matrix::identity(3), Vector{1, 2, 3});
        for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(i + 1.0).epsilon(1e-14));
    }
    SUBCASE("singular diagonal gives the minimum-norm solution") {
        const PsdSolve s = solve_psd_ranked(Matrix{{2, 0}, {0, 0}}, Vector{4, 5});
        CHECK(s.x[0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.x[1] == 0.0);
        CHECK(s.rank == 1);
    }
    SUBCASE("2x2 nonsingular") {
        const Matrix a{{4, 2}, {2, 2}};
        const Vector x = solve_psd(a, Vector{6, 4});
        CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-13));
        // A (1, 1) reproduces b.
        CHECK(a * Vector{1, 1} == Vector{6, 4});
    }
}

TEST_CASE("solve_psd: errors") {
    CHECK_THROWS_AS(solve_psd(Matrix{{1, 2, 3}}, Vector{1}), DimensionError);
    CHECK_THROWS_AS(solve_psd(Matrix::identity(2), Vector{1, 2, 3}), DimensionError);
    CHECK_THROWS_AS(solve_psd(Matrix{{1, 2}, {0, 1}}, Vector{1, 1}), DomainError);
}

TEST_CASE("solve_psd: least-squares optimality on random PSD systems") {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const std::size_t rank = 1 + (trial / 5) % n;
        const Matrix a = random_psd(n, rank, rng);
        std::vector<double> bv(n);
        for (auto& v : bv) v = normal(rng);
        const Vector b(bv);
        const Vector x = solve_psd(a, b);
        const double best = residual_norm(a, x, b);
        for (int probe = 0; probe < 20; ++probe) {
            std::vector<double> pv(n);
            for (auto& v : pv) v = 3.0 * normal(rng);
            CHECK(best <= residual_norm(a, Vector(pv), b) + 1e-9);
        }
        // Minimum norm: x lies in the range of A, so perturbing along the
        // null space can only lengthen it.
        CHECK(solve_psd_ranked(a, b).rank == rank);
    }
}

TEST_CASE("solve_psd is deterministic") {
    std::mt19937_64 rng(5);
    const Matrix a = random_psd(4, 3, rng);
    const Vector b{1, -2, 0.5, 3};
    CHECK(solve_psd(a, b) == solve_psd(a, b));
}

TEST_CASE("pseudo_inverse_psd inverts nonsingular matrices and matches the adjugate") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_psd(2, 2, rng);
        const Matrix inv = pseudo_inverse_psd(a);
        const auto adj = oracle::inverse_2x2(a.values());
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(oracle::rel_err(inv.values()[i], adj[i], 1.0) <= 1e-8);
        }
        const Matrix id = inv * a;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(std::abs(id(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-8);
    }
}

TEST_CASE("chi2_sf: worked examples") {
    CHECK(chi2_sf(0.0, 1) == 1.0);
    CHECK(chi2_sf(0.0, 7) == 1.0);
    // Reference values from arbitrary-precision evaluation of Q(df/2, x/2).
    CHECK(chi2_sf(13.72, 1) == doctest::Approx(2.1218287122257868e-4).epsilon(1e-9));
    CHECK(chi2_sf(4.0, 1) == doctest::Approx(0.045500263896358414).epsilon(1e-11));
    CHECK(chi2_sf(1.0, 1) == doctest::Approx(0.31731050786291410).epsilon(1e-11));
    CHECK(chi2_sf(0.5, 3) == doctest::Approx(0.91889141165467586).epsilon(1e-11));
    CHECK(chi2_sf(10.0, 5) == doctest::Approx(0.075235246146512179).epsilon(1e-11));
    CHECK(chi2_sf(3.0, 7) == doctest::Approx(0.88500223164315064).epsilon(1e-11));
    CHECK(chi2_sf(100.0, 50) == doctest::Approx(3.4549313829848639e-5).epsilon(1e-9));
    CHECK(chi2_sf(60.0, 10) == doctest::Approx(3.6243009520614880e-9).epsilon(1e-8));
    CHECK(chi2_sf(250.0, 100) == doctest::Approx(7.7669364035391771e-15).epsilon(1e-8));
    CHECK(chi2_sf(1e4, 100) == 0.0);
}

TEST_CASE("chi2_sf: errors") {
    CHECK_THROWS_AS(chi2_sf(-1.0, 1), DomainError);
    CHECK_THROWS_AS(chi2_sf(1.0, 0), DomainError);
    CHECK_THROWS_AS(chi2_sf(NAN, 1), DomainError);
}

TEST_CASE("chi2_sf: closed forms for df = 1 and df = 2") {
    for (int i = 0; i <= 500; ++i) {
        const double x = 50.0 * i / 500.0;
        CHECK(std::abs(chi2_sf(x, 1) - oracle::chi2_sf_df1(x)) <= 1e-10);
        CHECK(std::abs(chi2_sf(x, 2) - oracle::chi2_sf_df2(x)) <= 1e-12);
    }
}

TEST_CASE("chi2_sf: agrees with boost across df and both series branches") {
    double worst = 0.0;
    for (unsigned df = 1; df <= 100; df += 3) {
        boost::math::chi_squared_distribution<double> dist(df);
        for (double x : {0.01, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0, 99.0, 150.0, 400.0, 1e3, 1e4}) {
            const double expected = boost::math::cdf(boost::math::complement(dist, x));
            worst = std::max(worst, std::abs(chi2_sf(x, df) - expected));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("chi2_sf: monotone nonincreasing and within [0, 1]") {
    for (unsigned df : {1u, 2u, 3u, 10u, 40u}) {
        double prev = 1.0;
        for (int i = 0; i <= 2000; ++i) {
            const double p = chi2_sf(0.05 * i, df);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p <= prev);
            prev = p;
        }
    }
}
