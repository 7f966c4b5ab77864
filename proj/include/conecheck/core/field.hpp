#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "conecheck/core/grid.hpp"

namespace conecheck {

/// N real components sampled on a grid, stored component-major:
/// values[k * point_count + flat].
class Field {
 public:
  Field(Grid grid, std::size_t ncomp);  // zeros
  Field(Grid grid, std::size_t ncomp, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t ncomp() const { return ncomp_; }

  std::span<double> component(std::size_t k);
  std::span<const double> component(std::size_t k) const;
  double at(std::size_t k, std::size_t flat) const { return values_[k * grid_.point_count() + flat]; }
  double& at(std::size_t k, std::size_t flat) { return values_[k * grid_.point_count() + flat]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool all_finite() const;

 private:
  Grid grid_;
  std::size_t ncomp_;
  std::vector<double> values_;
};

struct MinSample {
  double value;
  std::size_t index;  // flat grid index
};

/// Discrete L^2 inner product sum_k sum_x f_k(x) g_k(x) h^d. Real fields only,
/// so no conjugation. Summation is sequential in storage order.
double inner_product(const Field& f, const Field& g);

/// Minimum of component k (0-based); ties resolve to the smallest flat index.
MinSample min_component_value(const Field& u, std::size_t k);

/// Integral of component k over the box.
double component_mass(const Field& u, std::size_t k);
/// L^2 norm of component k.
double component_l2_norm(const Field& u, std::size_t k);

}  // namespace conecheck
