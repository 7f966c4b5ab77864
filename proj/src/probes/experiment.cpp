#include "conecheck/probes/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <numbers>

#include "conecheck/core/errors.hpp"
#include "conecheck/probes/rate.hpp"
#include "conecheck/stepper/stepper.hpp"

namespace conecheck::probes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t ncomp_of(const ViolationKind& kind) {
  return std::visit(overloaded{
                        [](const DiffusionViolation& v) { return std::max<std::size_t>(2, std::max(v.k, v.j) + 1); },
                        [](const TransportViolation& v) { return std::max<std::size_t>(2, std::max(v.k, v.j) + 1); },
                        [](const ReactionViolation& v) { return v.ncomp; },
                    },
                    kind);
}

std::size_t pinned(const ViolationKind& kind) {
  return std::visit([](const auto& v) { return v.k; }, kind);
}

void check_kind(const ViolationKind& kind, int d) {
  std::visit(overloaded{
                 [](const DiffusionViolation& v) {
                   if (v.k == v.j) throw PreconditionError("diffusion experiment needs k != j");
                   if (!(v.a > 0.0)) throw PreconditionError("diffusion experiment needs a > 0");
                 },
                 [d](const TransportViolation& v) {
                   if (v.k == v.j) throw PreconditionError("transport experiment needs k != j");
                   if (v.gamma == 0.0 || !std::isfinite(v.gamma))
                     throw PreconditionError("transport experiment needs a nonzero gamma");
                   if (v.axis < 0 || v.axis >= d) throw PreconditionError("transport axis out of range");
                 },
                 [](const ReactionViolation& v) {
                   if (v.ncomp < 2) throw PreconditionError("reaction experiment needs at least two components");
                   if (v.k >= v.ncomp) throw PreconditionError("pinned component out of range");
                   v.reaction.validate(v.ncomp);
                 },
             },
             kind);
}

std::vector<MatrixN> no_transport(int d, std::size_t n) { return std::vector<MatrixN>(d, MatrixN(n)); }

Field initial_data(const ViolationKind& kind, const Grid& grid, double eps, const Mollifier& m) {
  const std::size_t n = ncomp_of(kind);
  const std::size_t k = pinned(kind);
  Field probe = std::holds_alternative<TransportViolation>(kind)
                    ? build_transport_probe(grid, std::get<TransportViolation>(kind).axis,
                                            std::get<TransportViolation>(kind).gamma > 0 ? 1 : -1, eps, m)
                    : build_diffusion_probe(grid, eps, m);
  Field u0(grid, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (c == k) continue;
    std::copy(probe.values().begin(), probe.values().end(), u0.component(c).begin());
  }
  return u0;
}

double fit_slope(const std::vector<double>& eps, const std::vector<double>& rate) {
  if (eps.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    mx += std::log(eps[i]);
    my += std::log(std::abs(rate[i]));
  }
  mx /= eps.size();
  my /= eps.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double dx = std::log(eps[i]) - mx;
    sxy += dx * (std::log(std::abs(rate[i])) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string kind_name(const ViolationKind& kind) {
  return std::visit(overloaded{
                        [](const DiffusionViolation&) { return std::string("diffusion"); },
                        [](const TransportViolation&) { return std::string("transport"); },
                        [](const ReactionViolation&) { return std::string("reaction"); },
                    },
                    kind);
}

SystemSpec violation_system(const ViolationKind& kind, int d) {
  check_kind(kind, d);
  const std::size_t n = ncomp_of(kind);
  return std::visit(overloaded{
                        [&](const DiffusionViolation& v) {
                          const double c = std::max(1.0, std::abs(v.a));
                          MatrixN A = MatrixN::identity(n);
                          for (std::size_t i = 0; i < n; ++i) A(i, i) = c;
                          A(v.k, v.j) = v.a;
                          return SystemSpec(d, A, no_transport(d, n), ReactionSpec::zero());
                        },
                        [&](const TransportViolation& v) {
                          auto gammas = no_transport(d, n);
                          gammas[v.axis](v.k, v.j) = v.gamma;
                          return SystemSpec(d, MatrixN::identity(n), gammas, ReactionSpec::zero());
                        },
                        [&](const ReactionViolation& v) {
                          return SystemSpec(d, MatrixN::identity(n), no_transport(d, n), v.reaction);
                        },
                    },
                    kind);
}

SystemSpec repaired_system(const ViolationKind& kind, int d) {
  const SystemSpec spec = violation_system(kind, d);
  const std::size_t n = spec.ncomp();
  if (std::holds_alternative<ReactionViolation>(kind))
    return spec.with_reaction(sign_fixed(spec.reaction(), n));
  MatrixN A = spec.diffusion();
  auto gammas = spec.transport();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) continue;
      A(r, c) = 0.0;
      for (auto& g : gammas) g(r, c) = 0.0;
    }
  return SystemSpec(d, A, gammas, spec.reaction());
}

ReactionSpec sign_fixed(const ReactionSpec& reaction, std::size_t ncomp) {
  reaction.validate(ncomp);
  switch (reaction.kind()) {
    case ReactionKind::Zero:
      return reaction;
    case ReactionKind::Linear: {
      MatrixN L = reaction.linear_matrix();
      for (std::size_t r = 0; r < ncomp; ++r)
        for (std::size_t c = 0; c < ncomp; ++c)
          if (r != c && L(r, c) > 0.0) L(r, c) = -L(r, c);
      return ReactionSpec::linear(L);
    }
    case ReactionKind::Polynomial: {
      auto terms = reaction.polynomial_terms().terms;
      for (std::size_t k = 0; k < terms.size(); ++k)
        for (auto& m : terms[k])
          if (m.exponents[k] == 0 && m.coeff > 0.0) m.coeff = -m.coeff;
      return ReactionSpec::polynomial(terms);
    }
  }
  return reaction;
}

double default_t_probe(const SystemSpec& spec, const Grid& grid) {
  return 1e-4 * std::pow(grid.box() / (2.0 * std::numbers::pi), 6) / spec.diffusion().spectral_norm();
}

Grid experiment_grid(int d, const std::vector<double>& eps, const Mollifier& m) {
  if (eps.empty()) throw PreconditionError("empty eps list");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (!(*lo > 0.0)) throw PreconditionError("eps values must be positive");
  const double h = m.width * *lo / kPointsPerWidth;
  const double needed = 2.0 * m.cutoff * m.width * *hi / h;
  const std::size_t n = std::max<std::size_t>(8, std::bit_ceil(static_cast<std::size_t>(std::ceil(needed - 1e-9))));
  return Grid(d, n, static_cast<double>(n) * h);
}

ViolationReport run_violation_experiment(const ViolationKind& kind, const std::vector<double>& eps, const Grid& grid,
                                         std::optional<double> t_probe, const Mollifier& m) {
  const SystemSpec spec = violation_system(kind, grid.dim());
  const SystemSpec control = repaired_system(kind, grid.dim());
  const std::size_t k = pinned(kind);

  ViolationReport report;
  report.kind = kind_name(kind);
  report.t_probe = t_probe.value_or(default_t_probe(spec, grid));
  if (!(report.t_probe > 0.0)) throw PreconditionError("t_probe must be positive");
  report.control_min_rate = std::numeric_limits<double>::infinity();

  stepper::RunConfig rc;
  rc.t_end = report.t_probe;
  const bool polynomial = spec.reaction().kind() == ReactionKind::Polynomial;
  rc.dt = polynomial ? report.t_probe / 16.0 : report.t_probe;
  rc.output_stride = polynomial ? 16 : 1;
  rc.record = {true, false, false};

  for (double e : eps) {
    if (!(e > 0.0)) throw PreconditionError("eps values must be positive");
    if (!resolvable(grid, e, m)) {
      report.dropped.push_back({e, "probe not resolvable on the grid or larger than the box"});
      continue;
    }
    const Field u0 = initial_data(kind, grid, e, m);
    try {
      const Field rate = initial_rate_field(spec, u0);
      const stepper::TimeSeries ts = stepper::run(spec, u0, rc);
      if (ts.blew_up) {
        report.dropped.push_back({e, "blow-up: " + ts.blowup_reason});
        continue;
      }
      const Field crate = initial_rate_field(control, u0);
      report.eps.push_back(e);
      report.initial_rate_at_origin.push_back(rate.at(k, grid.origin_index()));
      report.min_after_t_probe.push_back(min_component_value(ts.final_state, k).value);
      report.control_min_rate = std::min(report.control_min_rate, min_component_value(crate, k).value);
    } catch (const NumericalError& err) {
      report.dropped.push_back({e, std::string("propagator overflow: ") + err.what()});
    }
  }

  report.fitted_slope = fit_slope(report.eps, report.initial_rate_at_origin);
  for (std::size_t i = 0; i < report.eps.size(); ++i) {
    if (report.min_after_t_probe[i] < -kNegativityThreshold) {
      report.negativity_observed = true;
      if (!report.negativity_threshold_eps || report.eps[i] > *report.negativity_threshold_eps)
        report.negativity_threshold_eps = report.eps[i];
    }
  }
  if (report.eps.empty()) report.control_min_rate = std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::string to_json(const ViolationReport& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  j["t_probe"] = r.t_probe;
  j["eps"] = r.eps;
  j["initial_rate_at_origin"] = r.initial_rate_at_origin;
  j["min_after_t_probe"] = r.min_after_t_probe;
  j["fitted_slope"] = number_or_null(r.fitted_slope);
  j["negativity_observed"] = r.negativity_observed;
  j["negativity_threshold_eps"] =
      r.negativity_threshold_eps ? nlohmann::json(*r.negativity_threshold_eps) : nlohmann::json(nullptr);
  j["control_min_rate"] = number_or_null(r.control_min_rate);
  auto dropped = nlohmann::json::array();
  for (const auto& d : r.dropped) dropped.push_back({{"eps", d.eps}, {"reason", d.reason}});
  j["dropped"] = dropped;
  return j.dump(2);
}

}  // namespace conecheck::probes
