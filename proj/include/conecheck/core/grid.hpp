#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace conecheck {

/// Uniform periodic discretization of the box [-box/2, box/2)^d.
///
/// Sample i along an axis sits at x = (i - n/2) * spacing, so the origin is a
/// grid point with per-axis index n/2. Flat indices are row-major with axis 0
/// slowest. Wavenumbers follow the usual FFT layout: integer frequency m = i
/// for i < n/2 and m = i - n otherwise, xi = 2*pi*m/box. The Nyquist frequency
/// therefore appears as m = -n/2.
class Grid {
 public:
  static constexpr int kMaxDim = 3;

  Grid(int d, std::size_t n, double box);

  int dim() const { return d_; }
  std::size_t n() const { return n_; }
  double box() const { return box_; }
  double spacing() const { return box_ / static_cast<double>(n_); }
  double cell_volume() const;
  std::size_t point_count() const { return point_count_; }

  double coordinate(std::size_t i) const { return (static_cast<double>(i) - static_cast<double>(n_ / 2)) * spacing(); }
  /// Integer frequency of FFT index i (full-axis layout).
  long frequency(std::size_t i) const;
  double wavenumber(std::size_t i) const;
  bool is_nyquist(std::size_t i) const { return i == n_ / 2; }

  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, kMaxDim>& idx) const;
  std::size_t origin_index() const;

  /// Number of retained modes of a real-to-complex transform:
  /// n^(d-1) * (n/2 + 1).
  std::size_t mode_count() const { return mode_count_; }
  /// Per-axis FFT indices of half-spectrum mode `mode`. The last axis index
  /// runs over 0..n/2.
  std::array<std::size_t, kMaxDim> mode_indices(std::size_t mode) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.d_ == b.d_ && a.n_ == b.n_ && a.box_ == b.box_;
  }

 private:
  int d_;
  std::size_t n_;
  double box_;
  std::size_t point_count_;
  std::size_t mode_count_;
};

}  // namespace conecheck
