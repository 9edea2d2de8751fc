#include "logreg/model.hpp"

#include <cmath>
#include <numeric>

#include "logreg/kernels.hpp"

namespace logreg {

double logistic(double t) {
    if (!std::isfinite(t)) {
        throw NonFiniteError("logistic: argument must be finite");
    }
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("logit: probability must lie strictly between 0 and 1");
    }
    return std::log(p) - std::log1p(-p);
}

double softplus(double t) noexcept {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// ---------------------------------------------------------------- Dataset

Dataset::Dataset(Matrix design, Vector labels, std::vector<std::string> feature_names)
    : design_(std::move(design)), labels_(std::move(labels)), names_(std::move(feature_names)) {
    if (labels_.size() != design_.rows()) {
        throw DimensionError("Dataset: " + std::to_string(labels_.size()) + " labels for " +
                             std::to_string(design_.rows()) + " rows");
    }
    for (std::size_t i = 0; i < design_.rows(); ++i) {
        if (design_(i, 0) != 1.0) {
            throw DomainError("Dataset: first design column must be the all-ones intercept (row " +
                              std::to_string(i + 1) + ")");
        }
        if (labels_[i] != 0.0 && labels_[i] != 1.0) {
            throw DomainError("Dataset: label at row " + std::to_string(i + 1) +
                              " is not 0 or 1");
        }
    }
    if (names_.empty()) {
        names_.emplace_back("intercept");
        for (std::size_t j = 1; j < design_.cols(); ++j) names_.push_back("x" + std::to_string(j));
    }
    if (names_.size() != design_.cols()) {
        throw DimensionError("Dataset: " + std::to_string(names_.size()) + " names for " +
                             std::to_string(design_.cols()) + " columns");
    }
}

Dataset Dataset::with_intercept(const std::vector<std::vector<double>>& features,
                                const std::vector<double>& labels,
                                std::vector<std::string> names) {
    if (features.empty()) {
        throw DimensionError("Dataset: at least one row is required");
    }
    const std::size_t k = features.front().size();
    std::vector<double> design;
    design.reserve(features.size() * (k + 1));
    for (const auto& row : features) {
        if (row.size() != k) {
            throw DimensionError("Dataset: ragged feature rows");
        }
        design.push_back(1.0);
        design.insert(design.end(), row.begin(), row.end());
    }
    std::vector<std::string> full_names;
    if (!names.empty()) {
        if (names.size() != k) {
            throw DimensionError("Dataset: " + std::to_string(names.size()) + " names for " +
                                 std::to_string(k) + " features");
        }
        full_names.reserve(k + 1);
        full_names.emplace_back("intercept");
        for (auto& name : names) full_names.push_back(std::move(name));
    }
    return Dataset(Matrix(features.size(), k + 1, std::move(design)), Vector(labels),
                   std::move(full_names));
}

bool Dataset::has_both_classes() const noexcept {
    const std::size_t pos = count_positive();
    return pos > 0 && pos < n();
}

std::size_t Dataset::count_positive() const noexcept {
    std::size_t c = 0;
    for (double y : labels_) c += y == 1.0 ? 1 : 0;
    return c;
}

Dataset Dataset::select_columns(std::span<const std::size_t> cols) const {
    if (cols.empty() || cols.front() != 0) {
        throw DomainError("select_columns: the intercept column must come first");
    }
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (std::size_t c : cols) {
        if (c >= columns()) throw DimensionError("select_columns: index out of range");
        names.push_back(names_[c]);
    }
    return Dataset(design_.select_columns(cols), labels_, std::move(names));
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    if (rows.empty()) {
        throw DimensionError("select_rows: at least one row is required");
    }
    std::vector<double> y;
    y.reserve(rows.size());
    for (std::size_t r : rows) {
        if (r >= n()) throw DimensionError("select_rows: index out of range");
        y.push_back(labels_[r]);
    }
    return Dataset(design_.select_rows(rows), Vector(std::move(y)), names_);
}

Dataset Dataset::without_row(std::size_t row) const {
    if (row >= n()) throw DimensionError("without_row: index out of range");
    std::vector<std::size_t> keep;
    keep.reserve(n() - 1);
    for (std::size_t i = 0; i < n(); ++i)
        if (i != row) keep.push_back(i);
    return select_rows(keep);
}

Dataset Dataset::flipped_labels() const {
    std::vector<double> y(labels_.values());
    for (double& v : y) v = 1.0 - v;
    return Dataset(design_, Vector(std::move(y)), names_);
}

// ---------------------------------------------------------------- evaluation

void check_dimensions(const Dataset& data, const Coefficients& coef) {
    if (coef.size() != data.columns()) {
        throw DimensionError("coefficient length " + std::to_string(coef.size()) +
                             " does not match " + std::to_string(data.columns()) +
                             " design columns");
    }
}

Vector scores(const Dataset& data, const Coefficients& coef) {
    check_dimensions(data, coef);
    std::vector<double> out(data.n());
    kernels::scores(data.design(), coef.beta().span(), out);
    return Vector(std::move(out));
}

Vector predict_proba(const Dataset& data, const Coefficients& coef) {
    const Vector s = scores(data, coef);
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = logistic(s[i]);
    return Vector(std::move(out));
}

double log_likelihood(const Dataset& data, const Coefficients& coef) {
    check_dimensions(data, coef);
    return kernels::log_likelihood(data.design(), data.labels().span(), coef.beta().span());
}

}  // namespace logreg
