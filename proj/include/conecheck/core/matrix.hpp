#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace conecheck {

/// Square real matrix with constant coefficients, stored row-major.
/// Used for the diffusion matrix A, the transport matrices Gamma^i and the
/// linear reaction matrix L.
class MatrixN {
 public:
  MatrixN() = default;
  explicit MatrixN(std::size_t n);  // zero matrix
  MatrixN(std::size_t n, std::vector<double> entries);
  MatrixN(std::initializer_list<std::initializer_list<double>> rows);

  static MatrixN identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  const std::vector<double>& entries() const { return entries_; }

  bool is_diagonal() const;

  /// Smallest eigenvalue of (M + M^T)/2.
  double min_symmetric_eigenvalue() const;
  /// Largest singular value.
  double spectral_norm() const;

  friend bool operator==(const MatrixN&, const MatrixN&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

}  // namespace conecheck
