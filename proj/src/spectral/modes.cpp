#include "conecheck/spectral/modes.hpp"

#include <cstdlib>

namespace conecheck::spectral {

ModeTable mode_table(const Grid& grid) {
  const std::size_t modes = grid.mode_count();
  const long cutoff = static_cast<long>(grid.n()) / 3;
  ModeTable t;
  t.xi_squared.resize(modes);
  t.xi_odd.resize(modes);
  t.retained.resize(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    const auto idx = grid.mode_indices(m);
    double k2 = 0.0;
    bool keep = true;
    std::array<double, Grid::kMaxDim> odd{};
    for (int a = 0; a < grid.dim(); ++a) {
      const double xi = grid.wavenumber(idx[a]);
      k2 += xi * xi;
      odd[a] = grid.is_nyquist(idx[a]) ? 0.0 : xi;
      if (std::labs(grid.frequency(idx[a])) > cutoff) keep = false;
    }
    t.xi_squared[m] = k2;
    t.xi_odd[m] = odd;
    t.retained[m] = keep;
  }
  return t;
}

}  // namespace conecheck::spectral
