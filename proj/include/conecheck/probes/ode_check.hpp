#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conecheck/core/reaction.hpp"
#include "conecheck/core/system.hpp"

namespace conecheck::probes {

struct OdeTrajectory {
  std::vector<double> times;               // every step, times[0] = 0
  std::vector<std::vector<double>> states;
  bool blew_up = false;
};

/// Classical RK4 for u' = -F(u). Stops early, with blew_up set, when a value
/// is not finite or exceeds the stepper's blow-up threshold.
OdeTrajectory solve_ode(const ReactionSpec& reaction, const std::vector<double>& u0, double t_end, double dt);

struct OdeComparison {
  double max_deviation = 0.0;  // over output times, components and grid points
  std::optional<double> first_negative_pde;
  std::optional<double> first_negative_ode;
  double stride_time = 0.0;
  bool pde_blew_up = false;
  bool ode_blew_up = false;
  std::vector<double> times;
  std::vector<std::vector<double>> pde_values;  // grid mean per output time
  std::vector<std::vector<double>> ode_values;
};

/// Runs the PDE stepper from the spatially constant field u0_const on a small
/// periodic grid and compares it against solve_ode every output_stride steps.
/// The first form uses A = I and no transport in one dimension; the second
/// uses the given system. PDE negativity is detected at output times, ODE
/// negativity at every step.
OdeComparison ode_reduction_check(const ReactionSpec& reaction, const std::vector<double>& u0_const, double t_end,
                                  double dt, std::size_t output_stride = 1);
OdeComparison ode_reduction_check(const SystemSpec& spec, const std::vector<double>& u0_const, double t_end, double dt,
                                  std::size_t output_stride = 1);

}  // namespace conecheck::probes
