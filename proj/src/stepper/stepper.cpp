#include "conecheck/stepper/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "conecheck/core/errors.hpp"
#include "conecheck/spectral/modes.hpp"
#include "conecheck/spectral/multipliers.hpp"

namespace conecheck::stepper {

using spectral::Complex;
using spectral::ModePropagator;
using spectral::SpectrumField;

spectral::SpectrumField step_linear(const SpectrumField& s, const ModePropagator& P) {
  SpectrumField out = s;
  P.apply(out);
  return out;
}

Field evaluate_reaction(const Field& u, const ReactionSpec& reaction) {
  const std::size_t N = u.ncomp();
  reaction.validate(N);
  Field out(u.grid(), N);
  if (reaction.is_zero()) return out;
  const std::size_t P = u.grid().point_count();
  std::vector<double> point(N);
  std::vector<double> value(N);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t k = 0; k < N; ++k) point[k] = u.at(k, p);
    reaction.evaluate(point, value);
    for (std::size_t k = 0; k < N; ++k) {
      if (!std::isfinite(value[k])) throw NumericalError("reaction evaluation overflowed at grid point " + std::to_string(p));
      out.at(k, p) = value[k];
    }
  }
  return out;
}

double default_dt(const SystemSpec& spec, const Grid& grid) {
  const double xi_max = std::numbers::pi * static_cast<double>(grid.n()) / grid.box();
  const double k2 = grid.dim() * xi_max * xi_max;
  const double bound = k2 * k2 * k2 * std::max(spec.diffusion().spectral_norm(), 1e-300);
  return 700.0 / bound;
}

namespace {

bool state_ok(const Field& u) {
  for (double v : u.values())
    if (!std::isfinite(v) || std::abs(v) > kBlowupThreshold) return false;
  return true;
}

// s <- s + a * t
void axpy(SpectrumField& s, double a, const SpectrumField& t) {
  auto& x = s.coeffs();
  const auto& y = t.coeffs();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * y[i];
}

class Blowup {
 public:
  explicit Blowup(std::string why) : why_(std::move(why)) {}
  const std::string& why() const { return why_; }

 private:
  std::string why_;
};

}  // namespace

TimeSeries run(const SystemSpec& spec, const Field& u0, const RunConfig& rc) {
  const std::size_t steps = rc.step_count();
  if (u0.ncomp() != spec.ncomp()) throw DimensionError("initial field component count does not match the system");
  if (u0.grid().dim() != spec.dim()) throw DimensionError("initial field grid dimension does not match the system");

  const Grid& grid = u0.grid();
  const double h = rc.dt;
  const bool polynomial = spec.reaction().kind() == ReactionKind::Polynomial;
  const bool dealias_on = rc.dealias.value_or(polynomial);

  TimeSeries ts{{}, u0, 0.0, 0, false, {}};
  if (!state_ok(u0)) {
    ts.blew_up = true;
    ts.blowup_reason = "initial state is not finite or exceeds the blow-up threshold";
    return ts;
  }
  ts.snapshots.push_back(diagnose(u0, 0, 0.0));

  SpectrumField state = spectral::forward(u0);
  Field current = u0;

  const auto record = [&](std::size_t step) {
    ts.final_state = current;
    ts.final_step = step;
    ts.final_time = static_cast<double>(step) * h;
    if (step % rc.output_stride == 0 || step == steps) ts.snapshots.push_back(diagnose(current, step, ts.final_time));
  };

  if (!polynomial) {
    const ModePropagator P = spectral::build_propagator(spec, grid, h, true);
    for (std::size_t n = 1; n <= steps; ++n) {
      P.apply(state);
      if (n % rc.output_stride != 0 && n != steps) continue;
      Field next = spectral::inverse(state);
      if (!state_ok(next)) {
        ts.blew_up = true;
        ts.blowup_reason = "state left the finite range at step " + std::to_string(n);
        return ts;
      }
      current = std::move(next);
      record(n);
    }
    return ts;
  }

  const ModePropagator Eh = spectral::build_propagator(spec, grid, h, false);
  const ModePropagator Ehalf = spectral::build_propagator(spec, grid, 0.5 * h, false);

  std::size_t step_index = 0;
  // -F(u) in spectral space; `u` is the matching physical field.
  const auto nonlinear = [&](const Field& u) {
    Field f(grid, u.ncomp());
    try {
      f = evaluate_reaction(u, spec.reaction());
    } catch (const NumericalError& e) {
      throw Blowup(std::string(e.what()) + " during step " + std::to_string(step_index));
    }
    for (double& v : f.values()) v = -v;
    SpectrumField r = spectral::forward(f);
    if (dealias_on) spectral::dealias(r);
    return r;
  };
  const auto at_physical = [&](const SpectrumField& s) {
    Field u = spectral::inverse(s);
    if (!state_ok(u)) throw Blowup("stage state left the finite range during step " + std::to_string(step_index));
    return u;
  };

  try {
    for (std::size_t n = 1; n <= steps; ++n) {
      step_index = n;
      const SpectrumField k1 = nonlinear(current);

      SpectrumField a = state;
      axpy(a, 0.5 * h, k1);
      Ehalf.apply(a);
      const SpectrumField k2 = nonlinear(at_physical(a));

      SpectrumField b = state;
      Ehalf.apply(b);
      axpy(b, 0.5 * h, k2);
      const SpectrumField k3 = nonlinear(at_physical(b));

      SpectrumField c = state;
      Eh.apply(c);
      SpectrumField k3h = k3;
      Ehalf.apply(k3h);
      axpy(c, h, k3h);
      const SpectrumField k4 = nonlinear(at_physical(c));

      SpectrumField mid = k2;
      axpy(mid, 1.0, k3);
      Ehalf.apply(mid);
      SpectrumField k1h = k1;
      Eh.apply(k1h);

      Eh.apply(state);
      axpy(state, h / 6.0, k1h);
      axpy(state, h / 3.0, mid);
      axpy(state, h / 6.0, k4);

      Field next = spectral::inverse(state);
      if (!state_ok(next)) throw Blowup("state left the finite range at step " + std::to_string(n));
      current = std::move(next);
      record(n);
    }
  } catch (const Blowup& b) {
    ts.blew_up = true;
    ts.blowup_reason = b.why();
  }
  return ts;
}

}  // namespace conecheck::stepper
