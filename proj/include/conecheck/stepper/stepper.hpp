#pragma once

#include "conecheck/core/field.hpp"
#include "conecheck/core/reaction.hpp"
#include "conecheck/core/system.hpp"
#include "conecheck/spectral/propagator.hpp"
#include "conecheck/spectral/transform.hpp"
#include "conecheck/stepper/run_config.hpp"
#include "conecheck/stepper/time_series.hpp"

namespace conecheck::stepper {

/// Values with magnitude above this abort a run as blown up.
inline constexpr double kBlowupThreshold = 1e12;

/// out(xi) = exp(dt M(xi)) s(xi).
spectral::SpectrumField step_linear(const spectral::SpectrumField& s, const spectral::ModePropagator& P);

/// Pointwise F(u). Throws NumericalError when a value is not finite.
Field evaluate_reaction(const Field& u, const ReactionSpec& reaction);

/// Largest dt with max|xi|^6 * dt * ||A||_2 <= 700.
double default_dt(const SystemSpec& spec, const Grid& grid);

/// Advances u0 to rc.t_end.
///
/// Zero and linear reactions are propagated exactly, one mode exponential
/// per step. Polynomial reactions use integrating-factor RK4 (Lawson): the
/// linear part is carried by the exact propagators at dt/2 and dt, and the
/// reaction is evaluated pointwise and optionally dealiased. A non-finite
/// state or |u| > kBlowupThreshold stops the run early with `blew_up` set and
/// `final_state` holding the last finite state.
TimeSeries run(const SystemSpec& spec, const Field& u0, const RunConfig& rc);

}  // namespace conecheck::stepper
