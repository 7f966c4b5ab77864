#include "conecheck/spectral/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "conecheck/core/errors.hpp"

namespace conecheck::spectral {

namespace {

// FFTW planning is not thread safe; plans are created once per (d, n) under a
// mutex and then executed through the new-array interface, which is.
class Plans {
 public:
  Plans(int d, std::size_t n) {
    int dims[Grid::kMaxDim];
    std::size_t points = 1;
    for (int a = 0; a < d; ++a) {
      dims[a] = static_cast<int>(n);
      points *= n;
    }
    const std::size_t modes = points / n * (n / 2 + 1);
    std::vector<double> real(points);
    std::vector<Complex> spec(modes);
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c_ = fftw_plan_dft_r2c(d, dims, real.data(), cplx, flags);
    c2r_ = fftw_plan_dft_c2r(d, dims, cplx, real.data(), flags | FFTW_DESTROY_INPUT);
    if (!r2c_ || !c2r_) throw NumericalError("FFTW plan creation failed");
  }
  ~Plans() {
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  void r2c(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  void c2r(Complex* in, double* out) const { fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out); }

 private:
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

const Plans& plans_for(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::size_t>, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = std::make_unique<Plans>(grid.dim(), grid.n());
  return *slot;
}

// Index of the mode holding c(-m) for a mode on a self-conjugate plane.
std::size_t mirror_mode(const Grid& grid, std::size_t mode) {
  auto idx = grid.mode_indices(mode);
  const std::size_t n = grid.n();
  for (int a = 0; a < grid.dim() - 1; ++a) idx[a] = (n - idx[a]) % n;
  std::size_t flat = 0;
  for (int a = 0; a < grid.dim() - 1; ++a) flat = flat * n + idx[a];
  return flat * (n / 2 + 1) + idx[grid.dim() - 1];
}

}  // namespace

SpectrumField::SpectrumField(Grid grid, std::size_t ncomp)
    : grid_(grid), ncomp_(ncomp), coeffs_(ncomp * grid.mode_count()) {}

SpectrumField forward(const Field& u) {
  const auto& plans = plans_for(u.grid());
  SpectrumField s(u.grid(), u.ncomp());
  for (std::size_t k = 0; k < u.ncomp(); ++k) plans.r2c(u.component(k).data(), s.component(k).data());
  return s;
}

Field inverse(const SpectrumField& s) {
  const auto& plans = plans_for(s.grid());
  Field u(s.grid(), s.ncomp());
  std::vector<Complex> scratch(s.mode_count());
  const double scale = 1.0 / static_cast<double>(s.grid().point_count());
  for (std::size_t k = 0; k < s.ncomp(); ++k) {
    const auto src = s.component(k);
    std::copy(src.begin(), src.end(), scratch.begin());
    auto dst = u.component(k);
    plans.c2r(scratch.data(), dst.data());
    for (double& v : dst) v *= scale;
  }
  return u;
}

double spectral_energy(const SpectrumField& s) {
  const Grid& g = s.grid();
  const std::size_t half = g.n() / 2 + 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < s.ncomp(); ++k) {
    const auto c = s.component(k);
    for (std::size_t m = 0; m < c.size(); ++m) {
      const std::size_t last = m % half;
      const double w = (last == 0 || last == g.n() / 2) ? 1.0 : 2.0;
      acc += w * std::norm(c[m]);
    }
  }
  return acc * g.cell_volume() / static_cast<double>(g.point_count());
}

double conjugate_symmetry_defect(const SpectrumField& s) {
  const Grid& g = s.grid();
  const std::size_t half = g.n() / 2 + 1;
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& c : s.coeffs()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  for (std::size_t k = 0; k < s.ncomp(); ++k) {
    const auto c = s.component(k);
    for (std::size_t m = 0; m < c.size(); ++m) {
      const std::size_t last = m % half;
      if (last != 0 && last != g.n() / 2) continue;
      worst = std::max(worst, std::abs(c[mirror_mode(g, m)] - std::conj(c[m])));
    }
  }
  return worst / scale;
}

}  // namespace conecheck::spectral
