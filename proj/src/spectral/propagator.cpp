#include "conecheck/spectral/propagator.hpp"

#include <cmath>

#include "conecheck/core/errors.hpp"
#include "conecheck/spectral/expm.hpp"
#include "conecheck/spectral/modes.hpp"

namespace conecheck::spectral {

Eigen::MatrixXcd linear_symbol(const SystemSpec& spec, double xi_squared,
                               const std::array<double, Grid::kMaxDim>& xi_odd, bool include_linear_reaction) {
  const std::size_t N = spec.ncomp();
  const double sym = laplacian_cubed_symbol(xi_squared);
  const bool with_l = include_linear_reaction && spec.reaction().kind() == ReactionKind::Linear;
  Eigen::MatrixXcd M(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t j = 0; j < N; ++j) {
      double im = 0.0;
      for (int a = 0; a < spec.dim(); ++a) im += xi_odd[a] * spec.transport(a)(k, j);
      double re = sym * spec.diffusion()(k, j);
      if (with_l) re -= spec.reaction().linear_matrix()(k, j);
      M(k, j) = Complex(re, im);
    }
  }
  return M;
}

ModePropagator::ModePropagator(Grid grid, std::size_t ncomp, double dt, bool include_linear_reaction,
                               std::vector<Complex> exps)
    : grid_(grid), ncomp_(ncomp), dt_(dt), include_linear_reaction_(include_linear_reaction), exps_(std::move(exps)) {
  if (exps_.size() != grid_.mode_count() * ncomp_ * ncomp_) throw DimensionError("propagator storage size mismatch");
}

void ModePropagator::apply(SpectrumField& s) const {
  if (!(s.grid() == grid_) || s.ncomp() != ncomp_) throw DimensionError("propagator and spectrum shapes differ");
  const std::size_t N = ncomp_;
  std::vector<Complex> tmp(N);
  for (std::size_t m = 0; m < grid_.mode_count(); ++m) {
    const auto E = matrix(m);
    for (std::size_t k = 0; k < N; ++k) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < N; ++j) acc += E[k * N + j] * s.at(j, m);
      tmp[k] = acc;
    }
    for (std::size_t k = 0; k < N; ++k) s.at(k, m) = tmp[k];
  }
}

ModePropagator build_propagator(const SystemSpec& spec, const Grid& grid, double dt, bool include_linear_reaction) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw PreconditionError("propagator time step must be finite and >= 0");
  if (spec.dim() != grid.dim()) throw PreconditionError("system dimension does not match grid dimension");
  const std::size_t N = spec.ncomp();
  const ModeTable table = mode_table(grid);
  std::vector<Complex> exps(grid.mode_count() * N * N);
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    Complex* dst = exps.data() + m * N * N;
    const Eigen::MatrixXcd M = linear_symbol(spec, table.xi_squared[m], table.xi_odd[m], include_linear_reaction);
    if (N == 1) {
      const Complex e = std::exp(dt * M(0, 0));
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
        throw NumericalError("propagator: non-finite exponential (reduce dt or grid resolution)");
      dst[0] = e;
      continue;
    }
    const Eigen::MatrixXcd E = expm(dt * M);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j) dst[k * N + j] = E(k, j);
  }
  return ModePropagator(grid, N, dt, include_linear_reaction, std::move(exps));
}

}  // namespace conecheck::spectral
