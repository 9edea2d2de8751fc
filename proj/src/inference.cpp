#include "logreg/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace logreg {

double deviance(const Dataset& data, const Coefficients& coef) {
    return -2.0 * log_likelihood(data, coef);
}

NestedTestResult lrt_nested(const Dataset& data, std::span<const std::size_t> reduced_cols,
                            const FitConfig& config) {
    std::vector<std::size_t> cols(reduced_cols.begin(), reduced_cols.end());
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) {
        throw DomainError("lrt_nested: reduced column set contains duplicates");
    }
    if (cols.empty() || cols.front() != 0) {
        throw DomainError("lrt_nested: reduced model must include the intercept column");
    }
    if (cols.back() >= data.columns()) {
        throw DimensionError("lrt_nested: reduced column index out of range");
    }
    if (cols.size() >= data.columns()) {
        throw DomainError("lrt_nested: reduced model must be a strict subset of the full model");
    }

    const FitResult full = fit_irls(data, config);
    if (!full.converged()) {
        throw ConvergenceError("lrt_nested: full model fit ended " +
                               std::string(to_string(full.status)) + " after " +
                               std::to_string(full.iterations) + " iterations");
    }
    const FitResult reduced = fit_irls(data.select_columns(cols), config);
    if (!reduced.converged()) {
        throw ConvergenceError("lrt_nested: reduced model fit ended " +
                               std::string(to_string(reduced.status)) + " after " +
                               std::to_string(reduced.iterations) + " iterations");
    }

    const double statistic = reduced.deviance - full.deviance;
    const auto df = static_cast<unsigned>(data.columns() - cols.size());
    // Slightly negative values come only from the convergence tolerance.
    return NestedTestResult{
        .deviance_reduced = reduced.deviance,
        .deviance_full = full.deviance,
        .statistic = statistic,
        .df = df,
        .p_value = chi2_sf(std::max(statistic, 0.0), df),
    };
}

PressQResult press_q(std::size_t n, double rate) {
    if (n < 1) {
        throw DomainError("press_q: n must be at least 1");
    }
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw DomainError("press_q: rate must lie in [0, 1]");
    }
    const double d = 2.0 * rate - 1.0;
    const double q = static_cast<double>(n) * d * d;
    return PressQResult{.n = n, .error_rate = rate, .q_statistic = q, .p_value = chi2_sf(q, 1)};
}

PowerCurve power_curve(std::size_t n, std::size_t grid_points) {
    if (n < 1) {
        throw DomainError("power_curve: n must be at least 1");
    }
    if (grid_points < 2) {
        throw DomainError("power_curve: grid_points must be at least 2");
    }
    PowerCurve curve{n, std::vector<PowerPoint>(grid_points)};
    const auto count = static_cast<std::ptrdiff_t>(grid_points);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 1; i <= count; ++i) {
        const double power = static_cast<double>(i) / static_cast<double>(grid_points);
        const double d = 2.0 * power - 1.0;
        curve.points[static_cast<std::size_t>(i - 1)] = {power,
                                                         chi2_sf(static_cast<double>(n) * d * d, 1)};
    }
    return curve;
}

}  // namespace logreg
