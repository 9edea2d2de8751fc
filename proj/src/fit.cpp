#include "logreg/fit.hpp"

#include <algorithm>
#include <cmath>

#include "logreg/kernels.hpp"

namespace logreg {

void FitConfig::validate() const {
    if (!(grad_tol > 0.0) || !std::isfinite(grad_tol)) {
        throw DomainError("FitConfig: grad_tol must be positive");
    }
    if (max_iter < 1) {
        throw DomainError("FitConfig: max_iter must be at least 1");
    }
    if (!(divergence_norm > 0.0)) {
        throw DomainError("FitConfig: divergence_norm must be positive");
    }
}

std::string_view to_string(FitStatus status) noexcept {
    switch (status) {
    case FitStatus::Converged: return "Converged";
    case FitStatus::MaxIterations: return "MaxIterations";
    case FitStatus::Diverged: return "Diverged";
    }
    return "Unknown";
}

FitStatus parse_fit_status(std::string_view name) {
    if (name == "Converged") return FitStatus::Converged;
    if (name == "MaxIterations") return FitStatus::MaxIterations;
    if (name == "Diverged") return FitStatus::Diverged;
    throw DomainError("unknown fit status \"" + std::string(name) + "\"");
}

Vector gradient(const Dataset& data, const Coefficients& coef) {
    check_dimensions(data, coef);
    std::vector<double> g(data.columns());
    kernels::gradient(data.design(), data.labels().span(), coef.beta().span(), g);
    return Vector(std::move(g));
}

Matrix neg_hessian(const Dataset& data, const Coefficients& coef) {
    check_dimensions(data, coef);
    const std::size_t p = data.columns();
    std::vector<double> info(p * p);
    kernels::information(data.design(), coef.beta().span(), info);
    return Matrix(p, p, std::move(info));
}

Matrix covariance(const Dataset& data, const Coefficients& coef) {
    return pseudo_inverse_psd(neg_hessian(data, coef));
}

namespace {

bool all_finite(const kernels::NewtonTerms& t) {
    if (!std::isfinite(t.log_lik)) return false;
    for (double v : t.gradient)
        if (!std::isfinite(v)) return false;
    for (double v : t.information)
        if (!std::isfinite(v)) return false;
    return true;
}

double euclidean(const std::vector<double>& v) {
    return Vector(v).norm2();
}

// Every row strictly on its own label's side of the boundary.
bool classifies_perfectly(const Dataset& data, const std::vector<double>& beta) {
    std::vector<double> s(data.n());
    kernels::scores(data.design(), beta, s);
    for (std::size_t i = 0; i < data.n(); ++i) {
        const bool positive = data.labels()[i] == 1.0;
        if (positive ? !(s[i] > 0.0) : !(s[i] < 0.0)) return false;
    }
    return true;
}

FitResult assemble(const Dataset& data, std::vector<double> beta, const kernels::NewtonTerms& t,
                   std::size_t iterations, FitStatus status) {
    const std::size_t p = data.columns();
    Matrix info(p, p, t.information);
    std::size_t rank = 0;
    bool degenerate = false;
    Matrix cov = Matrix::zeros(p, p);
    try {
        cov = pseudo_inverse_psd(info, &rank);
        degenerate = rank < p;
    } catch (const NonFiniteError&) {
        // Information so small that its inverse overflows.
        degenerate = true;
    }
    std::vector<double> se(p);
    for (std::size_t j = 0; j < p; ++j) se[j] = std::sqrt(std::max(cov(j, j), 0.0));

    return FitResult{
        .coef = Coefficients(Vector(std::move(beta))),
        .log_lik = t.log_lik,
        .deviance = -2.0 * t.log_lik,
        .grad_norm = euclidean(t.gradient),
        .iterations = iterations,
        .status = status,
        .covariance = std::move(cov),
        .std_errors = Vector(std::move(se)),
        .degenerate = degenerate,
        .n = data.n(),
        .deviance_df = data.n() > p ? data.n() - p : 0,
    };
}

}  // namespace

FitResult fit_irls(const Dataset& data, const FitConfig& config) {
    config.validate();
    const Matrix& x = data.design();
    const auto y = data.labels().span();
    const std::size_t p = data.columns();

    // Terms at beta = 0 are always finite; later terms are checked before use.
    std::vector<double> beta(p, 0.0);
    kernels::NewtonTerms terms = kernels::newton_terms(x, y, beta);
    std::size_t iterations = 0;

    while (true) {
        if (iterations >= config.max_iter) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::MaxIterations);
        }

        // As in the reference loop, the gradient is measured at beta and the
        // step is still taken; the tolerance test applies to that gradient.
        const double measured = euclidean(terms.gradient);
        std::vector<double> next(beta);
        try {
            const Vector step = solve_psd(Matrix(p, p, terms.information), Vector(terms.gradient));
            for (std::size_t j = 0; j < p; ++j) next[j] += step[j];
        } catch (const NonFiniteError&) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::Diverged);
        }
        if (!std::all_of(next.begin(), next.end(), [](double v) { return std::isfinite(v); })) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::Diverged);
        }
        kernels::NewtonTerms next_terms = kernels::newton_terms(x, y, next);
        if (!all_finite(next_terms)) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::Diverged);
        }

        ++iterations;
        beta = std::move(next);
        terms = std::move(next_terms);
        if (euclidean(beta) > config.divergence_norm) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::Diverged);
        }
        if (measured <= config.grad_tol && euclidean(terms.gradient) <= config.grad_tol &&
            !classifies_perfectly(data, beta)) {
            return assemble(data, std::move(beta), terms, iterations, FitStatus::Converged);
        }
    }
}

}  // namespace logreg
