#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "conecheck/core/grid.hpp"

namespace conecheck::spectral {

/// Per-mode wavenumber data for the half spectrum of a grid.
struct ModeTable {
  /// |xi|^2 with the Nyquist frequency kept (even-order symbols are real there).
  std::vector<double> xi_squared;
  /// xi per axis for odd-order symbols; zero on the Nyquist frequency so that
  /// first derivatives of real fields stay real.
  std::vector<std::array<double, Grid::kMaxDim>> xi_odd;
  /// False for modes removed by the 2/3 rule (|m| > n/3 on some axis).
  std::vector<bool> retained;
};

ModeTable mode_table(const Grid& grid);

/// Symbol of Lap^3: -(xi_1^2 + ... + xi_d^2)^3.
inline double laplacian_cubed_symbol(double xi_squared) { return -(xi_squared * xi_squared * xi_squared); }

}  // namespace conecheck::spectral
