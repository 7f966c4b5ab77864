#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "conecheck/core/field.hpp"
#include "conecheck/core/grid.hpp"

namespace conecheck::spectral {

using Complex = std::complex<double>;

/// Half-spectrum Fourier coefficients of a real field, one block of
/// grid.mode_count() coefficients per component (see Grid::mode_indices).
///
/// Convention: forward is the unnormalized DFT
///   c(m) = sum_x u(x) exp(-2 pi i m . j / n),
/// inverse divides by n^d. Because sample j sits at x = (j - n/2) h the
/// coefficients carry a constant phase relative to a DFT centred on x = 0;
/// spectral multipliers are unaffected.
class SpectrumField {
 public:
  SpectrumField(Grid grid, std::size_t ncomp);

  const Grid& grid() const { return grid_; }
  std::size_t ncomp() const { return ncomp_; }
  std::size_t mode_count() const { return grid_.mode_count(); }

  std::span<Complex> component(std::size_t k) { return {coeffs_.data() + k * mode_count(), mode_count()}; }
  std::span<const Complex> component(std::size_t k) const { return {coeffs_.data() + k * mode_count(), mode_count()}; }
  Complex& at(std::size_t k, std::size_t mode) { return coeffs_[k * mode_count() + mode]; }
  const Complex& at(std::size_t k, std::size_t mode) const { return coeffs_[k * mode_count() + mode]; }

  std::vector<Complex>& coeffs() { return coeffs_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

 private:
  Grid grid_;
  std::size_t ncomp_;
  std::vector<Complex> coeffs_;
};

SpectrumField forward(const Field& u);
Field inverse(const SpectrumField& s);

/// h^d / n^d * sum over the full spectrum of |c|^2, i.e. the value that
/// inner_product(u, u) takes by Parseval.
double spectral_energy(const SpectrumField& s);

/// Largest |c(-m) - conj(c(m))| over the self-conjugate planes of the half
/// spectrum (last-axis index 0 and n/2), relative to the largest |c|.
double conjugate_symmetry_defect(const SpectrumField& s);

}  // namespace conecheck::spectral
