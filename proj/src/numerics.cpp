#include "logreg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace logreg {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NonFiniteError(std::string(what) + " contains a non-finite entry");
        }
    }
}

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Eigendecomposition of a validated symmetric matrix plus the truncation
// threshold shared by solve_psd and pseudo_inverse_psd.
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    double cutoff;
};

Spectrum decompose_symmetric(const Matrix& a) {
    if (!a.is_square()) {
        throw DimensionError("solve_psd: matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected square");
    }
    require_finite(a.span(), "solve_psd: matrix");
    const std::size_t n = a.rows();
    const double scale = max_abs(a);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-10 * scale) {
                throw DomainError("solve_psd: matrix is not symmetric");
            }
        }
    }

    Eigen::Map<const RowMajor> view(a.values().data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));
    Eigen::MatrixXd sym = view;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    Spectrum s{solver.eigenvalues(), solver.eigenvectors(), 0.0};
    const double largest = s.values.cwiseAbs().maxCoeff();
    s.cutoff = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * largest;
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
    if (data_.empty()) {
        throw DimensionError("Vector: length must be at least 1");
    }
    require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> entries) : Vector(std::vector<double>(entries)) {}

Vector Vector::zeros(std::size_t len) { return filled(len, 0.0); }

Vector Vector::filled(std::size_t len, double value) {
    return Vector(std::vector<double>(len, value));
}

double Vector::at(std::size_t i) const {
    if (i >= data_.size()) {
        throw DimensionError("Vector::at: index out of range");
    }
    return data_[i];
}

double Vector::norm2() const noexcept {
    // Scaled to survive entries near the overflow threshold.
    double scale = norm_inf();
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (double v : data_) {
        const double r = v / scale;
        sum += r * r;
    }
    return scale * std::sqrt(sum);
}

double Vector::norm_inf() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

namespace {
void require_same_length(const Vector& a, const Vector& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()) + " differ");
    }
}
}  // namespace

Vector operator+(const Vector& a, const Vector& b) {
    require_same_length(a, b, "operator+");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return Vector(std::move(out));
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_length(a, b, "operator-");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return Vector(std::move(out));
}

Vector operator*(double s, const Vector& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return Vector(std::move(out));
}

double dot(const Vector& a, const Vector& b) {
    require_same_length(a, b, "dot");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("Matrix: rows and cols must be at least 1");
    }
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("Matrix: expected " + std::to_string(rows_ * cols_) +
                             " entries, got " + std::to_string(data_.size()));
    }
    require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    *this = Matrix(rows_, cols_, std::move(data_));
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

Matrix Matrix::identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return Matrix(n, n, std::move(d));
}

Matrix Matrix::diagonal(const Vector& v) {
    const std::size_t n = v.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = v[i];
    return Matrix(n, n, std::move(d));
}

double Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw DimensionError("Matrix::at: index out of range");
    }
    return (*this)(r, c);
}

Vector Matrix::col(std::size_t c) const {
    if (c >= cols_) throw DimensionError("Matrix::col: index out of range");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return Vector(std::move(out));
}

Vector Matrix::diag() const {
    const std::size_t n = std::min(rows_, cols_);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(i, i);
    return Vector(std::move(out));
}

Matrix Matrix::transpose() const {
    std::vector<double> out(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[c * rows_ + r] = (*this)(r, c);
    return Matrix(cols_, rows_, std::move(out));
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
    std::vector<double> out;
    out.reserve(rows_ * cols.size());
    for (std::size_t c : cols) {
        if (c >= cols_) throw DimensionError("select_columns: index out of range");
    }
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c : cols) out.push_back((*this)(r, c));
    return Matrix(rows_, cols.size(), std::move(out));
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
    std::vector<double> out;
    out.reserve(rows.size() * cols_);
    for (std::size_t r : rows) {
        if (r >= rows_) throw DimensionError("select_rows: index out of range");
        auto src = row(r);
        out.insert(out.end(), src.begin(), src.end());
    }
    return Matrix(rows.size(), cols_, std::move(out));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product: inner dimensions differ");
    }
    std::vector<double> out(a.rows() * b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] += aik * b(k, j);
        }
    return Matrix(a.rows(), b.cols(), std::move(out));
}

Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw DimensionError("matrix-vector product: dimensions differ");
    }
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
        out[i] = s;
    }
    return Vector(std::move(out));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix difference: shapes differ");
    }
    std::vector<double> out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values()[i];
    return Matrix(a.rows(), a.cols(), std::move(out));
}

double max_abs(const Matrix& a) noexcept {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------- solves

PsdSolve solve_psd_ranked(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) {
        throw DimensionError("solve_psd: right-hand side has length " + std::to_string(b.size()) +
                             ", matrix has " + std::to_string(a.rows()) + " rows");
    }
    const Spectrum s = decompose_symmetric(a);
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::Map<const Eigen::VectorXd> rhs(b.values().data(), n);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = s.values(i);
        if (std::abs(lambda) <= s.cutoff || lambda == 0.0) continue;
        ++rank;
        x += (s.vectors.col(i).dot(rhs) / lambda) * s.vectors.col(i);
    }
    return {Vector(std::vector<double>(x.data(), x.data() + n)), rank};
}

Vector solve_psd(const Matrix& a, const Vector& b) { return solve_psd_ranked(a, b).x; }

Matrix pseudo_inverse_psd(const Matrix& a, std::size_t* rank) {
    const Spectrum s = decompose_symmetric(a);
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = s.values(i);
        if (std::abs(lambda) <= s.cutoff || lambda == 0.0) continue;
        ++r;
        inv += (1.0 / lambda) * s.vectors.col(i) * s.vectors.col(i).transpose();
    }
    if (rank) *rank = r;
    // Symmetrize exactly so downstream consumers see a symmetric covariance.
    std::vector<double> out(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out[static_cast<std::size_t>(i * n + j)] = 0.5 * (inv(i, j) + inv(j, i));
    return Matrix(a.rows(), a.cols(), std::move(out));
}

// ---------------------------------------------------------------- chi-square

namespace {

constexpr int kMaxGammaIterations = 100000;
constexpr double kGammaEps = 1e-17;

// exp(-x) x^a / Gamma(a), evaluated in log space.
double gamma_prefactor(double a, double x) {
    return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lower series: P(a, x) = prefactor * sum_n x^n / (a (a+1) ... (a+n)).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxGammaIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaEps) break;
    }
    return sum * gamma_prefactor(a, x);
}

// Continued fraction for Q(a, x), modified Lentz.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxGammaIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaEps) break;
    }
    return gamma_prefactor(a, x) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("gamma_q: shape must be positive and finite");
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("gamma_q: x must be finite and nonnegative");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
    }
    return std::clamp(gamma_q_fraction(a, x), 0.0, 1.0);
}

double chi2_sf(double x, unsigned df) {
    if (df == 0) {
        throw DomainError("chi2_sf: degrees of freedom must be at least 1");
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("chi2_sf: statistic must be finite and nonnegative");
    }
    return gamma_q(0.5 * static_cast<double>(df), 0.5 * x);
}

}  // namespace logreg
