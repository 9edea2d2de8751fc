#pragma once

// Dense linear algebra for the small symmetric systems of the Newton
// iteration, and the chi-square survival function.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "logreg/errors.hpp"

namespace logreg {

/// Dense vector of finite reals, length >= 1.
class Vector {
public:
    explicit Vector(std::vector<double> entries);
    Vector(std::initializer_list<double> entries);

    static Vector zeros(std::size_t len);
    static Vector filled(std::size_t len, double value);

    std::size_t size() const noexcept { return data_.size(); }
    double operator[](std::size_t i) const noexcept { return data_[i]; }
    double at(std::size_t i) const;

    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    double norm2() const noexcept;
    double norm_inf() const noexcept;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> data_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
double dot(const Vector& a, const Vector& b);

/// Dense row-major matrix of finite reals, rows >= 1 and cols >= 1.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const;

    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<const double> span() const noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    Vector col(std::size_t c) const;
    Vector diag() const;
    Matrix transpose() const;
    /// Keeps the listed columns, in the given order.
    Matrix select_columns(std::span<const std::size_t> cols) const;
    /// Keeps the listed rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> rows) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Largest |a_ij|.
double max_abs(const Matrix& a) noexcept;

/// Result of a truncated eigen-solve: the solution plus the numerical rank
/// of the system matrix after truncation.
struct PsdSolve {
    Vector x;
    std::size_t rank;
};

/// Minimum-norm least-squares solution of A x = b for symmetric PSD A.
///
/// A is eigendecomposed and eigenvalues with magnitude at or below
/// n * eps * max|lambda| are treated as zero, which is the tolerance MATLAB's
/// pinv uses. For nonsingular A this is the ordinary solve.
///
/// Throws DimensionError when A is not square or b.size() != A.rows(), and
/// DomainError when A is not symmetric within 1e-10 relative tolerance.
Vector solve_psd(const Matrix& a, const Vector& b);
PsdSolve solve_psd_ranked(const Matrix& a, const Vector& b);

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix, same truncation as
/// solve_psd. Equals the inverse when A is nonsingular.
Matrix pseudo_inverse_psd(const Matrix& a, std::size_t* rank = nullptr);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

/// Chi-square survival function 1 - F(x; df) = Q(df/2, x/2).
/// Throws DomainError for x < 0, non-finite x, or df == 0.
double chi2_sf(double x, unsigned df);

}  // namespace logreg
