#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "logreg/fit.hpp"
#include "logreg/inference.hpp"
#include "logreg/model.hpp"

namespace logreg {

/// Leave-one-out cross-validation outcome.
struct CvReport {
    std::vector<std::uint8_t> per_subject_errors;  ///< e_{-i}: 1 if subject i was misclassified
    double error_rate;                             ///< mean of per_subject_errors
    double discriminant_power;                     ///< 1 - error_rate
    std::size_t n;
    std::size_t non_converged_folds;  ///< folds not ending Converged, incl. single-class folds

    friend bool operator==(const CvReport&, const CvReport&) = default;
};

/// Label 1 where pi_i > threshold, else 0. The comparison is made on the
/// score scale (x_i' beta > logit(threshold)), so at the default threshold it
/// is exactly the sign rule and a score of exactly 0 maps to 0.
///
/// Throws DomainError unless 0 < threshold < 1.
Vector classify(const Dataset& data, const Coefficients& coef, double threshold = 0.5);

/// Leave-one-out error rate of the logistic discriminant rule.
///
/// Each held-out subject is classified by a model fitted on the remaining
/// n - 1. Folds that stop at MaxIterations or Diverged still classify with
/// their final coefficients. A fold whose training rows hold a single class
/// predicts that class (the training majority) without fitting. Both kinds
/// are counted in non_converged_folds. Folds run in parallel; the report is
/// in subject order.
///
/// Throws DomainError if n < 2 or only one class is present.
CvReport loocv(const Dataset& data, const FitConfig& config = {}, double threshold = 0.5);

PressQResult evaluate_with_press_q(const CvReport& report);

}  // namespace logreg
