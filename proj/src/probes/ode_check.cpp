#include "conecheck/probes/ode_check.hpp"

#include <algorithm>
#include <cmath>

#include "conecheck/core/errors.hpp"
#include "conecheck/stepper/stepper.hpp"

namespace conecheck::probes {

namespace {

std::vector<double> minus_f(const ReactionSpec& reaction, const std::vector<double>& u) {
  std::vector<double> out(u.size());
  reaction.evaluate(u, out);
  for (double& v : out) v = -v;
  return out;
}

std::vector<double> axpy(const std::vector<double>& u, double h, const std::vector<double>& k) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + h * k[i];
  return out;
}

bool bad(const std::vector<double>& u) {
  return std::any_of(u.begin(), u.end(),
                     [](double v) { return !std::isfinite(v) || std::abs(v) > stepper::kBlowupThreshold; });
}

bool negative(const std::vector<double>& u) {
  return std::any_of(u.begin(), u.end(), [](double v) { return v < 0.0; });
}

}  // namespace

OdeTrajectory solve_ode(const ReactionSpec& reaction, const std::vector<double>& u0, double t_end, double dt) {
  stepper::RunConfig rc;
  rc.t_end = t_end;
  rc.dt = dt;
  const std::size_t steps = rc.step_count();
  reaction.validate(u0.size());

  OdeTrajectory tr;
  tr.times.push_back(0.0);
  tr.states.push_back(u0);
  std::vector<double> u = u0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const auto k1 = minus_f(reaction, u);
    const auto k2 = minus_f(reaction, axpy(u, dt / 2, k1));
    const auto k3 = minus_f(reaction, axpy(u, dt / 2, k2));
    const auto k4 = minus_f(reaction, axpy(u, dt, k3));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (bad(u)) {
      tr.blew_up = true;
      break;
    }
    tr.times.push_back(static_cast<double>(s) * dt);
    tr.states.push_back(u);
  }
  return tr;
}

OdeComparison ode_reduction_check(const ReactionSpec& reaction, const std::vector<double>& u0_const, double t_end,
                                  double dt, std::size_t output_stride) {
  const std::size_t n = u0_const.size();
  const SystemSpec spec(1, MatrixN::identity(n), {MatrixN(n)}, reaction);
  return ode_reduction_check(spec, u0_const, t_end, dt, output_stride);
}

OdeComparison ode_reduction_check(const SystemSpec& spec, const std::vector<double>& u0_const, double t_end, double dt,
                                  std::size_t output_stride) {
  if (u0_const.size() != spec.ncomp()) throw DimensionError("constant state does not match the component count");
  for (double v : u0_const)
    if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("constant state must be nonnegative");

  stepper::RunConfig full;
  full.t_end = t_end;
  full.dt = dt;
  full.output_stride = output_stride;
  const std::size_t steps = full.step_count();

  OdeComparison cmp;
  cmp.stride_time = dt * static_cast<double>(output_stride);
  const OdeTrajectory ode = solve_ode(spec.reaction(), u0_const, t_end, dt);
  cmp.ode_blew_up = ode.blew_up;
  for (std::size_t s = 0; s < ode.states.size(); ++s)
    if (negative(ode.states[s])) {
      cmp.first_negative_ode = ode.times[s];
      break;
    }

  const Grid grid(spec.dim(), 8, 2.0 * 3.141592653589793);
  Field u(grid, spec.ncomp());
  for (std::size_t c = 0; c < spec.ncomp(); ++c) std::fill(u.component(c).begin(), u.component(c).end(), u0_const[c]);

  auto record = [&](std::size_t step, const Field& f) {
    std::vector<double> mean(spec.ncomp());
    bool neg = false;
    for (std::size_t c = 0; c < spec.ncomp(); ++c) {
      double sum = 0.0;
      for (double v : f.component(c)) {
        sum += v;
        neg = neg || v < 0.0;
      }
      mean[c] = sum / static_cast<double>(grid.point_count());
      if (step < ode.states.size())
        for (double v : f.component(c)) cmp.max_deviation = std::max(cmp.max_deviation, std::abs(v - ode.states[step][c]));
    }
    const double t = static_cast<double>(step) * dt;
    if (neg && !cmp.first_negative_pde) cmp.first_negative_pde = t;
    cmp.times.push_back(t);
    cmp.pde_values.push_back(mean);
    cmp.ode_values.push_back(step < ode.states.size() ? ode.states[step] : std::vector<double>{});
  };

  record(0, u);
  stepper::RunConfig chunk;
  chunk.dt = dt;
  chunk.record = {false, false, false};
  for (std::size_t done = 0; done < steps;) {
    const std::size_t m = std::min(output_stride, steps - done);
    chunk.t_end = dt * static_cast<double>(m);
    chunk.output_stride = m;
    const stepper::TimeSeries ts = stepper::run(spec, u, chunk);
    if (ts.blew_up) {
      cmp.pde_blew_up = true;
      break;
    }
    u = ts.final_state;
    done += m;
    record(done, u);
  }
  return cmp;
}

}  // namespace conecheck::probes
