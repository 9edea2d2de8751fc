#include <doctest.h>

#include <cmath>
#include <random>

#include "logreg/inference.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace logreg;

namespace {

// Appends a column to a dataset (after its existing features).
Dataset with_extra_column(const Dataset& d, const std::vector<double>& col) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d.n(); ++i) {
        auto r = d.design().row(i);
        std::vector<double> row(r.begin() + 1, r.end());
        row.push_back(col[i]);
        rows.push_back(std::move(row));
    }
    return Dataset::with_intercept(rows, d.labels().values());
}

}  // namespace

TEST_CASE("deviance: worked examples") {
    std::mt19937_64 rng(1);
    const Dataset d = gen::random_dataset(9, 2, rng);
    CHECK(deviance(d, Coefficients::zeros(3)) == doctest::Approx(2.0 * 9 * std::log(2.0)));
    for (int i = 0; i < 50; ++i) {
        CHECK(deviance(d, Coefficients(Vector(gen::random_vector(3, rng, 3.0)))) >= 0.0);
    }
    const Dataset io = Dataset::with_intercept({{}, {}, {}, {}}, {1, 1, 1, 0});
    CHECK(deviance(io, Coefficients(Vector{std::log(3.0)})) ==
          doctest::Approx(4.4986811569504668).epsilon(1e-14));
}

TEST_CASE("lrt_nested: structure on a noise column") {
    const Dataset base = gen::simulate(300, {0.2, 1.0}, 5);
    std::mt19937_64 rng(6);
    const Dataset d = with_extra_column(base, gen::random_vector(base.n(), rng));
    const std::vector<std::size_t> reduced{0, 1};
    const NestedTestResult r = lrt_nested(d, reduced);
    CHECK(r.df == 1);
    CHECK(r.statistic >= 0.0);
    CHECK(r.statistic == r.deviance_reduced - r.deviance_full);
    CHECK(r.p_value == chi2_sf(r.statistic, 1));
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value <= 1.0);
}

TEST_CASE("lrt_nested: an all-zero column adds nothing") {
    const Dataset base = gen::simulate(120, {-0.3, 0.7}, 8);
    const Dataset d = with_extra_column(base, std::vector<double>(base.n(), 0.0));
    const std::vector<std::size_t> reduced{0, 1};
    const NestedTestResult r = lrt_nested(d, reduced);
    CHECK(std::abs(r.statistic) <= 1e-6);
    CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("lrt_nested: argument errors") {
    const Dataset d = gen::simulate(60, {0.0, 1.0, -1.0}, 9);
    const std::vector<std::size_t> no_intercept{1};
    CHECK_THROWS_AS(lrt_nested(d, no_intercept), DomainError);
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK_THROWS_AS(lrt_nested(d, all), DomainError);
    const std::vector<std::size_t> dup{0, 1, 1};
    CHECK_THROWS_AS(lrt_nested(d, dup), DomainError);
    const std::vector<std::size_t> out_of_range{0, 7};
    CHECK_THROWS_AS(lrt_nested(d, out_of_range), DimensionError);
}

TEST_CASE("lrt_nested: non-convergence names the fit") {
    const Dataset sep = Dataset::with_intercept({{-2.0}, {-1.0}, {1.0}, {2.0}}, {0, 0, 1, 1});
    const std::vector<std::size_t> reduced{0};
    try {
        lrt_nested(sep, reduced);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::string(e.what()).find("full model") != std::string::npos);
    }
}

TEST_CASE("lrt_nested: null calibration of the statistic") {
    // 500 null datasets, two pure-noise columns tested jointly: the
    // statistic should average about df = 2.
    double sum = 0.0;
    int rejections = 0;
    constexpr int kReps = 500;
    const std::vector<std::size_t> reduced{0, 1};
    for (int rep = 0; rep < kReps; ++rep) {
        const Dataset d = gen::simulate(200, {0.3, 0.8, 0.0, 0.0}, 90000 + rep);
        const NestedTestResult r = lrt_nested(d, reduced);
        CHECK(r.df == 2);
        sum += r.statistic;
        rejections += r.p_value < 0.05 ? 1 : 0;
    }
    const double mean = sum / kReps;
    CHECK(mean >= 1.6);
    CHECK(mean <= 2.4);
    const double rate = static_cast<double>(rejections) / kReps;
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.09);
}

TEST_CASE("nested deviances are monotone along a column chain") {
    for (int seed = 0; seed < 20; ++seed) {
        const Dataset d = gen::simulate(150, {0.1, 0.6, -0.4, 0.2}, 500 + seed);
        const std::vector<std::size_t> a{0};
        const std::vector<std::size_t> b{0, 2};
        const std::vector<std::size_t> c{0, 2, 3};
        const double dev_a = fit_irls(d.select_columns(a)).deviance;
        const double dev_b = fit_irls(d.select_columns(b)).deviance;
        const double dev_c = fit_irls(d.select_columns(c)).deviance;
        const double dev_full = fit_irls(d).deviance;
        CHECK(dev_a >= dev_b - 1e-6);
        CHECK(dev_b >= dev_c - 1e-6);
        CHECK(dev_c >= dev_full - 1e-6);
    }
}

TEST_CASE("press_q: worked examples") {
    const PressQResult fig = press_q(28, 0.85);
    CHECK(fig.q_statistic == doctest::Approx(13.72).epsilon(1e-12));
    CHECK(fig.p_value >= 1.9e-4);
    CHECK(fig.p_value <= 2.3e-4);

    const PressQResult chance = press_q(50, 0.5);
    CHECK(chance.q_statistic == 0.0);
    CHECK(chance.p_value == 1.0);

    const PressQResult r = press_q(100, 0.6);
    CHECK(r.q_statistic == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(oracle::chi2_sf_df1(4.0)).epsilon(1e-10));
    CHECK(r.p_value == doctest::Approx(0.0455).epsilon(1e-3));
}

TEST_CASE("press_q: errors and symmetry") {
    CHECK_THROWS_AS(press_q(0, 0.2), DomainError);
    CHECK_THROWS_AS(press_q(10, -0.01), DomainError);
    CHECK_THROWS_AS(press_q(10, 1.01), DomainError);
    CHECK_THROWS_AS(press_q(10, NAN), DomainError);
    for (int n = 1; n <= 200; n += 7) {
        for (int i = 0; i <= 64; ++i) {
            const double g = i / 64.0;
            CHECK(press_q(n, g).q_statistic == press_q(n, 1.0 - g).q_statistic);
        }
    }
}

TEST_CASE("power_curve: shape") {
    for (std::size_t n : {1u, 28u, 100u, 1000u}) {
        const PowerCurve c = power_curve(n);
        REQUIRE(c.points.size() == 1000);
        CHECK(c.points.front().power == 0.001);
        CHECK(c.points.back().power == 1.0);
        CHECK(c.points[499].power == 0.5);
        CHECK(c.points[499].p_value == 1.0);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            if (c.points[i].power > 0.5) {
                CHECK(c.points[i].p_value <= c.points[i - 1].p_value);
            } else {
                CHECK(c.points[i].p_value >= c.points[i - 1].p_value);
            }
        }
    }
    const PowerCurve small = power_curve(28);
    const PowerCurve large = power_curve(1000);
    for (std::size_t i = 0; i < small.points.size(); ++i) {
        if (small.points[i].power > 0.5) CHECK(large.points[i].p_value <= small.points[i].p_value);
    }
    const PowerPoint at85 = small.points[849];
    CHECK(at85.power == doctest::Approx(0.85));
    CHECK(at85.p_value >= 1.9e-4);
    CHECK(at85.p_value <= 2.3e-4);

    CHECK(power_curve(5, 2).points.size() == 2);
    CHECK_THROWS_AS(power_curve(0), DomainError);
    CHECK_THROWS_AS(power_curve(10, 1), DomainError);
}
