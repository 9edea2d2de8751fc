#pragma once

// Row-reduction kernels behind the log-likelihood, score vector and
// information matrix.
//
// Two implementations share one signature set. The parallel kernels split
// the rows into fixed-size blocks, reduce each block under OpenMP and then
// sum the block partials in block order, so results do not depend on the
// thread count. The serial kernels are plain single-pass loops kept as the
// reference the parallel path is tested and benchmarked against.

#include <cstddef>
#include <span>
#include <vector>

#include "logreg/numerics.hpp"

namespace logreg::kernels {

/// Quantities of one Newton step at a given beta.
struct NewtonTerms {
    double log_lik = 0.0;
    std::vector<double> gradient;     ///< X'(y - pi), length p
    std::vector<double> information;  ///< X'SX, p*p row-major
};

/// Rows per reduction block in the parallel kernels.
inline constexpr std::size_t kBlockRows = 256;

namespace serial {
void scores(const Matrix& x, std::span<const double> beta, std::span<double> out);
double log_likelihood(const Matrix& x, std::span<const double> y, std::span<const double> beta);
void gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta,
              std::span<double> out);
void information(const Matrix& x, std::span<const double> beta, std::span<double> out);
NewtonTerms newton_terms(const Matrix& x, std::span<const double> y,
                         std::span<const double> beta);
}  // namespace serial

void scores(const Matrix& x, std::span<const double> beta, std::span<double> out);
double log_likelihood(const Matrix& x, std::span<const double> y, std::span<const double> beta);
void gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta,
              std::span<double> out);
void information(const Matrix& x, std::span<const double> beta, std::span<double> out);
NewtonTerms newton_terms(const Matrix& x, std::span<const double> y,
                         std::span<const double> beta);

/// y - logistic(s) without cancellation for large |s| (y in {0, 1}).
double residual(double y, double s) noexcept;
/// pi (1 - pi) at score s, evaluated as logistic(s) * logistic(-s).
double weight(double s) noexcept;

}  // namespace logreg::kernels
