#include "conecheck/probes/rate.hpp"

#include "conecheck/core/errors.hpp"
#include "conecheck/spectral/multipliers.hpp"
#include "conecheck/spectral/transform.hpp"
#include "conecheck/stepper/stepper.hpp"

namespace conecheck::probes {

Field initial_rate_field(const SystemSpec& spec, const Field& u0) {
  if (u0.ncomp() != spec.ncomp() || u0.grid().dim() != spec.dim())
    throw DimensionError("initial data does not match the system shape");
  const auto s = spectral::forward(u0);
  auto lin = spectral::apply_laplacian_cubed(s, spec.diffusion());
  const auto tr = spectral::apply_transport(s, spec.transport());
  for (std::size_t i = 0; i < lin.coeffs().size(); ++i) lin.coeffs()[i] += tr.coeffs()[i];
  Field rate = spectral::inverse(lin);
  if (!spec.reaction().is_zero()) {
    const Field f = stepper::evaluate_reaction(u0, spec.reaction());
    for (std::size_t i = 0; i < rate.values().size(); ++i) rate.values()[i] -= f.values()[i];
  }
  return rate;
}

}  // namespace conecheck::probes
