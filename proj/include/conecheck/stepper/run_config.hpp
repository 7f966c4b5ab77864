#pragma once

#include <cstddef>
#include <optional>

namespace conecheck::stepper {

struct RecordSet {
  bool min = true;
  bool mass = true;
  bool l2norm = true;
};

struct RunConfig {
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t output_stride = 1;
  /// 2/3-rule dealiasing of the reaction term; unset means on for polynomial
  /// reactions.
  std::optional<bool> dealias;
  RecordSet record;

  /// Number of steps t_end / dt. Throws PreconditionError unless
  /// 0 < dt <= t_end, the ratio is an integer within 1e-9 and stride >= 1.
  std::size_t step_count() const;
};

}  // namespace conecheck::stepper
