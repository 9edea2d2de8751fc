#include "logreg/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "logreg/model.hpp"

namespace logreg::kernels {

namespace {

double sigmoid(double s) noexcept {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

double row_score(std::span<const double> row, std::span<const double> beta) noexcept {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * beta[j];
    return s;
}

void check(const Matrix& x, std::span<const double> beta) {
    if (beta.size() != x.cols()) {
        throw DimensionError("coefficient length " + std::to_string(beta.size()) +
                             " does not match " + std::to_string(x.cols()) + " design columns");
    }
}

void check(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check(x, beta);
    if (y.size() != x.rows()) {
        throw DimensionError("label length " + std::to_string(y.size()) + " does not match " +
                             std::to_string(x.rows()) + " design rows");
    }
}

// Upper triangle of sum_i w_i x_i x_i' over rows [begin, end).
void accumulate_information(const Matrix& x, std::span<const double> beta, std::size_t begin,
                            std::size_t end, double* info) noexcept {
    const std::size_t p = x.cols();
    for (std::size_t i = begin; i < end; ++i) {
        auto row = x.row(i);
        const double w = weight(row_score(row, beta));
        for (std::size_t a = 0; a < p; ++a) {
            const double wa = w * row[a];
            for (std::size_t b = a; b < p; ++b) info[a * p + b] += wa * row[b];
        }
    }
}

void mirror_upper(std::span<double> m, std::size_t p) noexcept {
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < a; ++b) m[a * p + b] = m[b * p + a];
}

std::size_t block_count(std::size_t n) noexcept { return (n + kBlockRows - 1) / kBlockRows; }

}  // namespace

double residual(double y, double s) noexcept {
    // 1 - logistic(s) == logistic(-s); avoids 1 - (1 - tiny) rounding to 0.
    return y > 0.5 ? sigmoid(-s) : -sigmoid(s);
}

double weight(double s) noexcept { return sigmoid(s) * sigmoid(-s); }

// ---------------------------------------------------------------- serial

namespace serial {

void scores(const Matrix& x, std::span<const double> beta, std::span<double> out) {
    check(x, beta);
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = row_score(x.row(i), beta);
}

double log_likelihood(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check(x, y, beta);
    double ll = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double s = row_score(x.row(i), beta);
        ll += y[i] * s - softplus(s);
    }
    return ll;
}

void gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta,
              std::span<double> out) {
    check(x, y, beta);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        const double r = residual(y[i], row_score(row, beta));
        for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * r;
    }
}

void information(const Matrix& x, std::span<const double> beta, std::span<double> out) {
    check(x, beta);
    std::fill(out.begin(), out.end(), 0.0);
    accumulate_information(x, beta, 0, x.rows(), out.data());
    mirror_upper(out, x.cols());
}

NewtonTerms newton_terms(const Matrix& x, std::span<const double> y,
                         std::span<const double> beta) {
    check(x, y, beta);
    const std::size_t p = x.cols();
    NewtonTerms t;
    t.gradient.assign(p, 0.0);
    t.information.assign(p * p, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        const double s = row_score(row, beta);
        t.log_lik += y[i] * s - softplus(s);
        const double r = residual(y[i], s);
        const double w = weight(s);
        for (std::size_t a = 0; a < p; ++a) {
            t.gradient[a] += row[a] * r;
            const double wa = w * row[a];
            for (std::size_t b = a; b < p; ++b) t.information[a * p + b] += wa * row[b];
        }
    }
    mirror_upper(t.information, p);
    return t;
}

}  // namespace serial

// ---------------------------------------------------------------- parallel

void scores(const Matrix& x, std::span<const double> beta, std::span<double> out) {
    check(x, beta);
    const auto n = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel for schedule(static) if (n > static_cast<std::ptrdiff_t>(kBlockRows))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = row_score(x.row(static_cast<std::size_t>(i)), beta);
    }
}

double log_likelihood(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check(x, y, beta);
    const std::size_t n = x.rows();
    const auto nb = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
#pragma omp parallel for schedule(static) if (nb > 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
        const std::size_t end = std::min(n, begin + kBlockRows);
        double ll = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double s = row_score(x.row(i), beta);
            ll += y[i] * s - softplus(s);
        }
        partial[static_cast<std::size_t>(b)] = ll;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

void gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta,
              std::span<double> out) {
    check(x, y, beta);
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    const auto nb = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(nb) * p, 0.0);
#pragma omp parallel for schedule(static) if (nb > 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
        const std::size_t end = std::min(n, begin + kBlockRows);
        double* g = partial.data() + static_cast<std::size_t>(b) * p;
        for (std::size_t i = begin; i < end; ++i) {
            auto row = x.row(i);
            const double r = residual(y[i], row_score(row, beta));
            for (std::size_t j = 0; j < p; ++j) g[j] += row[j] * r;
        }
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (std::ptrdiff_t b = 0; b < nb; ++b)
        for (std::size_t j = 0; j < p; ++j) out[j] += partial[static_cast<std::size_t>(b) * p + j];
}

void information(const Matrix& x, std::span<const double> beta, std::span<double> out) {
    check(x, beta);
    const std::size_t n = x.rows();
    const std::size_t pp = x.cols() * x.cols();
    const auto nb = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(nb) * pp, 0.0);
#pragma omp parallel for schedule(static) if (nb > 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
        accumulate_information(x, beta, begin, std::min(n, begin + kBlockRows),
                               partial.data() + static_cast<std::size_t>(b) * pp);
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (std::ptrdiff_t b = 0; b < nb; ++b)
        for (std::size_t j = 0; j < pp; ++j) out[j] += partial[static_cast<std::size_t>(b) * pp + j];
    mirror_upper(out, x.cols());
}

NewtonTerms newton_terms(const Matrix& x, std::span<const double> y,
                         std::span<const double> beta) {
    check(x, y, beta);
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    // Block layout: [log_lik | gradient (p) | information (p*p)].
    const std::size_t stride = 1 + p + p * p;
    const auto nb = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<double> partial(static_cast<std::size_t>(nb) * stride, 0.0);
#pragma omp parallel for schedule(static) if (nb > 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlockRows;
        const std::size_t end = std::min(n, begin + kBlockRows);
        double* acc = partial.data() + static_cast<std::size_t>(b) * stride;
        double* g = acc + 1;
        double* info = g + p;
        for (std::size_t i = begin; i < end; ++i) {
            auto row = x.row(i);
            const double s = row_score(row, beta);
            acc[0] += y[i] * s - softplus(s);
            const double r = residual(y[i], s);
            const double w = weight(s);
            for (std::size_t a = 0; a < p; ++a) {
                g[a] += row[a] * r;
                const double wa = w * row[a];
                for (std::size_t c = a; c < p; ++c) info[a * p + c] += wa * row[c];
            }
        }
    }

    NewtonTerms t;
    t.gradient.assign(p, 0.0);
    t.information.assign(p * p, 0.0);
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const double* acc = partial.data() + static_cast<std::size_t>(b) * stride;
        t.log_lik += acc[0];
        for (std::size_t j = 0; j < p; ++j) t.gradient[j] += acc[1 + j];
        for (std::size_t j = 0; j < p * p; ++j) t.information[j] += acc[1 + p + j];
    }
    mirror_upper(t.information, p);
    return t;
}

}  // namespace logreg::kernels
