#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "conecheck/core/grid.hpp"
#include "conecheck/core/system.hpp"
#include "conecheck/spectral/transform.hpp"

namespace conecheck::spectral {

/// Linear symbol at one mode:
///   M(xi) = -|xi|^6 A + i sum_j xi_j Gamma^j  (- L when requested and F = L u).
Eigen::MatrixXcd linear_symbol(const SystemSpec& spec, double xi_squared,
                               const std::array<double, Grid::kMaxDim>& xi_odd, bool include_linear_reaction);

/// exp(dt M(xi)) for every half-spectrum mode of a grid.
class ModePropagator {
 public:
  ModePropagator(Grid grid, std::size_t ncomp, double dt, bool include_linear_reaction, std::vector<Complex> exps);

  const Grid& grid() const { return grid_; }
  std::size_t ncomp() const { return ncomp_; }
  double dt() const { return dt_; }
  bool includes_linear_reaction() const { return include_linear_reaction_; }

  /// Row-major N x N matrix of one mode.
  std::span<const Complex> matrix(std::size_t mode) const {
    return {exps_.data() + mode * ncomp_ * ncomp_, ncomp_ * ncomp_};
  }

  /// In-place s(xi) <- exp(dt M(xi)) s(xi).
  void apply(SpectrumField& s) const;

 private:
  Grid grid_;
  std::size_t ncomp_;
  double dt_;
  bool include_linear_reaction_;
  std::vector<Complex> exps_;
};

/// Builds the per-mode exponentials. dt = 0 gives the identity. Throws
/// NumericalError when an exponential is not finite (dt |xi|^6 too large for
/// the reaction part) and PreconditionError for dt < 0 or a spec/grid
/// dimension mismatch.
ModePropagator build_propagator(const SystemSpec& spec, const Grid& grid, double dt, bool include_linear_reaction);

}  // namespace conecheck::spectral
