#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logreg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands whose shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// NaN or Inf where only finite values are admitted.
class NonFiniteError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A fit required to converge did not.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Input data that fails validation. Row and column are reported when known
/// (row is 1-based over data rows, excluding the header).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
    DataError(const std::string& what, std::size_t row, std::string column)
        : Error("row " + std::to_string(row) + ", column \"" + column + "\": " + what),
          row_(row),
          column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_ = 0;
    std::string column_;
};

}  // namespace logreg
