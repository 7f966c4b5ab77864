#include "conecheck/core/grid.hpp"

#include <cmath>
#include <numbers>

#include "conecheck/core/errors.hpp"

namespace conecheck {

Grid::Grid(int d, std::size_t n, double box) : d_(d), n_(n), box_(box) {
  if (d < 1 || d > kMaxDim) throw PreconditionError("grid dimension must be 1, 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) throw PreconditionError("grid points per axis must be a power of two >= 8");
  if (!(box > 0.0) || !std::isfinite(box)) throw PreconditionError("grid box length must be positive and finite");
  point_count_ = 1;
  for (int a = 0; a < d; ++a) point_count_ *= n;
  mode_count_ = point_count_ / n * (n / 2 + 1);
}

double Grid::cell_volume() const { return std::pow(spacing(), d_); }

long Grid::frequency(std::size_t i) const {
  const auto si = static_cast<long>(i);
  const auto sn = static_cast<long>(n_);
  return si < sn / 2 ? si : si - sn;
}

double Grid::wavenumber(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(frequency(i)) / box_;
}

std::array<std::size_t, Grid::kMaxDim> Grid::unflatten(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> idx{};
  for (int a = d_ - 1; a >= 0; --a) {
    idx[a] = flat % n_;
    flat /= n_;
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < d_; ++a) flat = flat * n_ + idx[a];
  return flat;
}

std::size_t Grid::origin_index() const {
  std::array<std::size_t, kMaxDim> idx{};
  for (int a = 0; a < d_; ++a) idx[a] = n_ / 2;
  return flatten(idx);
}

std::array<std::size_t, Grid::kMaxDim> Grid::mode_indices(std::size_t mode) const {
  std::array<std::size_t, kMaxDim> idx{};
  const std::size_t half = n_ / 2 + 1;
  idx[d_ - 1] = mode % half;
  mode /= half;
  for (int a = d_ - 2; a >= 0; --a) {
    idx[a] = mode % n_;
    mode /= n_;
  }
  return idx;
}

}  // namespace conecheck
