#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logreg/fit.hpp"
#include "logreg/model.hpp"

namespace logreg {

/// Likelihood-ratio comparison of a reduced model nested in a full model.
struct NestedTestResult {
    double deviance_reduced;  ///< D_q
    double deviance_full;     ///< D_p
    double statistic;         ///< D_q - D_p, unclamped
    unsigned df;              ///< p - q
    double p_value;           ///< chi2_sf(max(statistic, 0), df)

    friend bool operator==(const NestedTestResult&, const NestedTestResult&) = default;
};

/// Press's Q test of classification accuracy against chance.
struct PressQResult {
    std::size_t n;
    double error_rate;
    double q_statistic;  ///< n (2 rate - 1)^2
    double p_value;      ///< chi2_sf(q_statistic, 1)

    friend bool operator==(const PressQResult&, const PressQResult&) = default;
};

struct PowerPoint {
    double power;
    double p_value;

    friend bool operator==(const PowerPoint&, const PowerPoint&) = default;
};

/// Press's Q p-value tabulated against discriminant power.
struct PowerCurve {
    std::size_t n;
    std::vector<PowerPoint> points;

    friend bool operator==(const PowerCurve&, const PowerCurve&) = default;
};

/// -2 log-likelihood.
double deviance(const Dataset& data, const Coefficients& coef);

/// Fits the full model and the model restricted to reduced_cols (column
/// indices into the design, 0 = intercept) and compares their deviances.
///
/// Throws DomainError if reduced_cols omits the intercept, repeats a column,
/// or is not a strict subset of the columns; ConvergenceError naming the
/// model if either fit does not converge.
NestedTestResult lrt_nested(const Dataset& data, std::span<const std::size_t> reduced_cols,
                            const FitConfig& config = {});

/// Q = n (2 rate - 1)^2 against chi-square(1). The formula is symmetric in
/// rate <-> 1 - rate, so an error rate or a discriminant power may be passed.
PressQResult press_q(std::size_t n, double rate);

/// Rows (i / grid_points, Press's Q p-value) for i = 1..grid_points.
PowerCurve power_curve(std::size_t n, std::size_t grid_points = 1000);

}  // namespace logreg
