#include "conecheck/core/field.hpp"

#include <cmath>

#include "conecheck/core/errors.hpp"

namespace conecheck {

Field::Field(Grid grid, std::size_t ncomp)
    : grid_(grid), ncomp_(ncomp), values_(ncomp * grid.point_count(), 0.0) {
  if (ncomp == 0) throw DimensionError("field needs at least one component");
}

Field::Field(Grid grid, std::size_t ncomp, std::vector<double> values)
    : grid_(grid), ncomp_(ncomp), values_(std::move(values)) {
  if (ncomp == 0) throw DimensionError("field needs at least one component");
  if (values_.size() != ncomp * grid.point_count()) throw DimensionError("field value count does not match ncomp * n^d");
  if (!all_finite()) throw NumericalError("field values must be finite");
}

std::span<double> Field::component(std::size_t k) {
  if (k >= ncomp_) throw DimensionError("component index out of range");
  return {values_.data() + k * grid_.point_count(), grid_.point_count()};
}

std::span<const double> Field::component(std::size_t k) const {
  if (k >= ncomp_) throw DimensionError("component index out of range");
  return {values_.data() + k * grid_.point_count(), grid_.point_count()};
}

bool Field::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

double inner_product(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid())) throw DimensionError("inner product of fields on different grids");
  if (f.ncomp() != g.ncomp()) throw DimensionError("inner product of fields with different component counts");
  double acc = 0.0;
  const auto& a = f.values();
  const auto& b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * f.grid().cell_volume();
}

MinSample min_component_value(const Field& u, std::size_t k) {
  const auto c = u.component(k);
  MinSample best{c[0], 0};
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] < best.value) best = {c[i], i};
  return best;
}

double component_mass(const Field& u, std::size_t k) {
  double acc = 0.0;
  for (double v : u.component(k)) acc += v;
  return acc * u.grid().cell_volume();
}

double component_l2_norm(const Field& u, std::size_t k) {
  double acc = 0.0;
  for (double v : u.component(k)) acc += v * v;
  return std::sqrt(acc * u.grid().cell_volume());
}

}  // namespace conecheck
