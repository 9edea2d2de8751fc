#include "logreg/classify.hpp"

#include <exception>

namespace logreg {

namespace {

double score_cutoff(double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw DomainError("classify: threshold must lie strictly between 0 and 1");
    }
    return logit(threshold);
}

double score_of(const Dataset& data, std::size_t row, const Coefficients& coef) {
    auto x = data.design().row(row);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * coef[j];
    return s;
}

}  // namespace

Vector classify(const Dataset& data, const Coefficients& coef, double threshold) {
    const double cutoff = score_cutoff(threshold);
    const Vector s = scores(data, coef);
    std::vector<double> labels(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) labels[i] = s[i] > cutoff ? 1.0 : 0.0;
    return Vector(std::move(labels));
}

CvReport loocv(const Dataset& data, const FitConfig& config, double threshold) {
    config.validate();
    const double cutoff = score_cutoff(threshold);
    const std::size_t n = data.n();
    if (n < 2) {
        throw DomainError("loocv: at least two subjects are required");
    }
    if (!data.has_both_classes()) {
        throw DomainError("loocv: both classes must be present");
    }

    std::vector<std::uint8_t> errors(n, 0);
    std::vector<std::uint8_t> non_converged(n, 0);
    std::exception_ptr failure;

    const auto folds = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t fold = 0; fold < folds; ++fold) {
        const auto i = static_cast<std::size_t>(fold);
        try {
            const Dataset train = data.without_row(i);
            const double truth = data.labels()[i];
            double predicted = 0.0;
            if (!train.has_both_classes()) {
                predicted = train.labels()[0];
                non_converged[i] = 1;
            } else {
                const FitResult fit = fit_irls(train, config);
                non_converged[i] = fit.converged() ? 0 : 1;
                predicted = score_of(data, i, fit.coef) > cutoff ? 1.0 : 0.0;
            }
            errors[i] = predicted == truth ? 0 : 1;
        } catch (...) {
#pragma omp critical(loocv_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t wrong = 0;
    std::size_t unconverged = 0;
    for (std::size_t i = 0; i < n; ++i) {
        wrong += errors[i];
        unconverged += non_converged[i];
    }
    const double rate = static_cast<double>(wrong) / static_cast<double>(n);
    return CvReport{
        .per_subject_errors = std::move(errors),
        .error_rate = rate,
        .discriminant_power = 1.0 - rate,
        .n = n,
        .non_converged_folds = unconverged,
    };
}

PressQResult evaluate_with_press_q(const CvReport& report) {
    return press_q(report.n, report.error_rate);
}

}  // namespace logreg
