#include "conecheck/core/matrix.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "conecheck/core/errors.hpp"

namespace conecheck {

namespace {
Eigen::MatrixXd to_eigen(const MatrixN& m) {
  Eigen::MatrixXd out(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out(r, c) = m(r, c);
  return out;
}
}  // namespace

MatrixN::MatrixN(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

MatrixN::MatrixN(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DimensionError("matrix entry count does not equal n*n");
  for (double v : entries_)
    if (!std::isfinite(v)) throw DimensionError("matrix entries must be finite");
}

MatrixN::MatrixN(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix rows must all have length n");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

MatrixN MatrixN::identity(std::size_t n) {
  MatrixN m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool MatrixN::is_diagonal() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c)
      if (r != c && (*this)(r, c) != 0.0) return false;
  return true;
}

double MatrixN::min_symmetric_eigenvalue() const {
  if (n_ == 0) return 0.0;
  const Eigen::MatrixXd a = to_eigen(*this);
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double MatrixN::spectral_norm() const {
  if (n_ == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(*this));
  return svd.singularValues()(0);
}

}  // namespace conecheck
