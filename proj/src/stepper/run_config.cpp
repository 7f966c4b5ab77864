#include "conecheck/stepper/run_config.hpp"

#include <algorithm>
#include <cmath>

#include "conecheck/core/errors.hpp"

namespace conecheck::stepper {

std::size_t RunConfig::step_count() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw PreconditionError("t_end must be finite and >= dt");
  if (output_stride < 1) throw PreconditionError("output stride must be >= 1");
  const double ratio = t_end / dt;
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps))
    throw PreconditionError("t_end / dt must be an integer step count");
  return static_cast<std::size_t>(steps);
}

}  // namespace conecheck::stepper
