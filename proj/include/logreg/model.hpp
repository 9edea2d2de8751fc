#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "logreg/numerics.hpp"

namespace logreg {

/// 1 / (1 + exp(-t)), branching on the sign of t so neither side overflows.
/// Throws NonFiniteError for NaN or infinite t.
double logistic(double t);

/// log(p / (1 - p)). Throws DomainError unless 0 < p < 1.
double logit(double p);

/// log(1 + exp(t)) without overflow.
double softplus(double t) noexcept;

/// Design matrix with a leading intercept column plus binary labels.
///
/// Invariants: the first column of the design is all ones, labels are exactly
/// 0 or 1, one label per row, and one feature name per column with
/// "intercept" first.
class Dataset {
public:
    Dataset(Matrix design, Vector labels, std::vector<std::string> feature_names);

    /// Prepends the intercept column to raw feature rows. Every row must have
    /// names.size() entries; rows may be empty for an intercept-only model.
    static Dataset with_intercept(const std::vector<std::vector<double>>& features,
                                  const std::vector<double>& labels,
                                  std::vector<std::string> names = {});

    std::size_t n() const noexcept { return design_.rows(); }
    /// Number of columns including the intercept (k + 1).
    std::size_t columns() const noexcept { return design_.cols(); }

    const Matrix& design() const noexcept { return design_; }
    const Vector& labels() const noexcept { return labels_; }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }

    bool has_both_classes() const noexcept;
    std::size_t count_positive() const noexcept;

    /// Restricts to a column subset. Column 0 (the intercept) must be listed first.
    Dataset select_columns(std::span<const std::size_t> cols) const;
    Dataset select_rows(std::span<const std::size_t> rows) const;
    Dataset without_row(std::size_t row) const;
    /// Same design with labels replaced by 1 - y.
    Dataset flipped_labels() const;

private:
    Matrix design_;
    Vector labels_;
    std::vector<std::string> names_;
};

/// Regression coefficients (beta_0, ..., beta_k), intercept first.
class Coefficients {
public:
    explicit Coefficients(Vector beta) : beta_(std::move(beta)) {}
    static Coefficients zeros(std::size_t len) { return Coefficients(Vector::zeros(len)); }

    std::size_t size() const noexcept { return beta_.size(); }
    double operator[](std::size_t i) const noexcept { return beta_[i]; }
    const Vector& beta() const noexcept { return beta_; }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;

private:
    Vector beta_;
};

/// Linear scores x_i' beta.
Vector scores(const Dataset& data, const Coefficients& coef);

/// pi_i = logistic(x_i' beta).
Vector predict_proba(const Dataset& data, const Coefficients& coef);

/// Bernoulli log-likelihood sum_i y_i s_i - softplus(s_i) with s_i = x_i' beta.
double log_likelihood(const Dataset& data, const Coefficients& coef);

/// Throws DimensionError if coef does not match the design's column count.
void check_dimensions(const Dataset& data, const Coefficients& coef);

}  // namespace logreg
