#pragma once

#include <stdexcept>
#include <string>

namespace conecheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what, std::size_t line = 0);

  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A + A^T is not positive definite.
class PositivityError : public Error {
 public:
  explicit PositivityError(double smallest_eigenvalue);
  double smallest_eigenvalue() const { return smallest_; }

 private:
  double smallest_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Overflow, NaN, or blow-up inside a numerical kernel.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace conecheck
