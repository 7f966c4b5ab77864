#pragma once

#include "conecheck/core/field.hpp"
#include "conecheck/core/system.hpp"

namespace conecheck::probes {

/// du/dt at t = 0: A Lap^3 u0 + sum_i Gamma^i du0/dx_i - F(u0). Linear terms
/// are spectral, F is pointwise.
Field initial_rate_field(const SystemSpec& spec, const Field& u0);

}  // namespace conecheck::probes
