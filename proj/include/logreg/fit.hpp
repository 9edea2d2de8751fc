#pragma once

#include <cstddef>
#include <string_view>

#include "logreg/model.hpp"
#include "logreg/numerics.hpp"

namespace logreg {

/// Stopping rules for the Newton iteration.
struct FitConfig {
    double grad_tol = 1e-3;          ///< stop once ||X'(y - pi)||_2 <= grad_tol
    std::size_t max_iter = 100;      ///< Newton step budget
    double divergence_norm = 1e8;    ///< ||beta||_2 above this reports Diverged

    /// Throws DomainError for a non-positive tolerance, zero iterations or a
    /// non-positive divergence bound.
    void validate() const;
};

enum class FitStatus { Converged, MaxIterations, Diverged };

std::string_view to_string(FitStatus status) noexcept;
/// Inverse of to_string. Throws DomainError on unknown names.
FitStatus parse_fit_status(std::string_view name);

struct FitResult {
    Coefficients coef;
    double log_lik;
    double deviance;          ///< -2 log_lik
    double grad_norm;         ///< ||g||_2 at coef
    std::size_t iterations;   ///< Newton steps taken
    FitStatus status;
    Matrix covariance;        ///< (X'SX)^+ at coef
    Vector std_errors;        ///< sqrt(diag(covariance))
    bool degenerate;          ///< X'SX was rank deficient at coef
    std::size_t n;            ///< rows used in the fit
    std::size_t deviance_df;  ///< n - (k + 1), reference only

    bool converged() const noexcept { return status == FitStatus::Converged; }

    friend bool operator==(const FitResult&, const FitResult&) = default;
};

/// Score vector X'(y - pi).
Vector gradient(const Dataset& data, const Coefficients& coef);

/// X'SX with S = diag(pi_i (1 - pi_i)); the negated Hessian of the log-likelihood.
Matrix neg_hessian(const Dataset& data, const Coefficients& coef);

/// (X'SX)^{-1}, or its pseudoinverse when X'SX is singular at coef.
Matrix covariance(const Dataset& data, const Coefficients& coef);

/// Full Newton (IRLS) iteration from beta = 0:
///   beta <- beta + (X'SX)^+ X'(y - pi)
/// Each pass measures the score norm at the current beta and then steps; the
/// fit stops after the first step taken from a beta whose score norm was at
/// most grad_tol (and the score at the new beta is within grad_tol too).
/// It also stops once max_iter steps have been taken or ||beta|| exceeds
/// divergence_norm.
///
/// A beta that classifies every training row strictly correctly means the
/// maximum likelihood estimate does not exist (the likelihood keeps rising
/// along that direction), so a small gradient there is not reported as
/// Converged and the iteration continues. Non-finite intermediate values end
/// the fit as Diverged with the last finite beta.
FitResult fit_irls(const Dataset& data, const FitConfig& config = {});

}  // namespace logreg
