#include "conecheck/spectral/multipliers.hpp"

#include "conecheck/core/errors.hpp"
#include "conecheck/spectral/modes.hpp"

namespace conecheck::spectral {

SpectrumField apply_laplacian_cubed(const SpectrumField& s, const MatrixN& A) {
  const std::size_t N = s.ncomp();
  if (A.size() != N) throw DimensionError("diffusion matrix side does not match component count");
  const ModeTable table = mode_table(s.grid());
  SpectrumField out(s.grid(), N);
  for (std::size_t m = 0; m < s.mode_count(); ++m) {
    const double sym = laplacian_cubed_symbol(table.xi_squared[m]);
    for (std::size_t k = 0; k < N; ++k) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < N; ++j) acc += A(k, j) * s.at(j, m);
      out.at(k, m) = sym * acc;
    }
  }
  return out;
}

SpectrumField apply_transport(const SpectrumField& s, const std::vector<MatrixN>& gammas) {
  const std::size_t N = s.ncomp();
  const int d = s.grid().dim();
  if (gammas.size() != static_cast<std::size_t>(d)) throw DimensionError("expected one transport matrix per axis");
  for (const auto& g : gammas)
    if (g.size() != N) throw DimensionError("transport matrix side does not match component count");
  const ModeTable table = mode_table(s.grid());
  SpectrumField out(s.grid(), N);
  const Complex I(0.0, 1.0);
  for (std::size_t m = 0; m < s.mode_count(); ++m) {
    for (std::size_t k = 0; k < N; ++k) {
      Complex acc = 0.0;
      for (int a = 0; a < d; ++a) {
        const double xi = table.xi_odd[m][a];
        if (xi == 0.0) continue;
        Complex row = 0.0;
        for (std::size_t j = 0; j < N; ++j) row += gammas[a](k, j) * s.at(j, m);
        acc += xi * row;
      }
      out.at(k, m) = I * acc;
    }
  }
  return out;
}

void dealias(SpectrumField& s) {
  const ModeTable table = mode_table(s.grid());
  for (std::size_t k = 0; k < s.ncomp(); ++k) {
    auto c = s.component(k);
    for (std::size_t m = 0; m < c.size(); ++m)
      if (!table.retained[m]) c[m] = 0.0;
  }
}

}  // namespace conecheck::spectral
