#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conecheck/core/grid.hpp"
#include "conecheck/core/reaction.hpp"
#include "conecheck/core/system.hpp"
#include "conecheck/probes/probe.hpp"

namespace conecheck::probes {

/// Component k pinned at zero, component j carries a diffusion probe, and
/// A = c I + a E_kj with c = max(1, |a|).
struct DiffusionViolation {
  std::size_t k = 0;
  std::size_t j = 1;
  double a = 1.0;
};

/// A = I, Gamma^axis = gamma E_kj; component j carries a transport probe
/// along axis with sign = sign(gamma).
struct TransportViolation {
  std::size_t k = 0;
  std::size_t j = 1;
  int axis = 0;
  double gamma = 1.0;
};

/// A = I, no transport, reaction F on ncomp components; every component
/// other than k carries a diffusion probe.
struct ReactionViolation {
  std::size_t k = 0;
  std::size_t ncomp = 2;
  ReactionSpec reaction;
};

using ViolationKind = std::variant<DiffusionViolation, TransportViolation, ReactionViolation>;

std::string kind_name(const ViolationKind& kind);

/// Pinned component must drop below this to count as negativity.
inline constexpr double kNegativityThreshold = 1e-8;

struct DroppedEps {
  double eps;
  std::string reason;
};

struct ViolationReport {
  std::string kind;
  double t_probe = 0.0;
  std::vector<double> eps;                     // retained values
  std::vector<DroppedEps> dropped;
  std::vector<double> initial_rate_at_origin;  // component k
  std::vector<double> min_after_t_probe;       // component k
  double fitted_slope = 0.0;                   // NaN with fewer than two retained eps
  bool negativity_observed = false;
  std::optional<double> negativity_threshold_eps;  // largest eps showing negativity
  /// Smallest initial rate of component k over the grid (all zeros of u0_k)
  /// for the repaired system, minimized over the retained eps.
  double control_min_rate = 0.0;
};

/// The system an experiment runs on, and its repaired counterpart (A or
/// Gamma made diagonal, or the reaction sign-fixed).
SystemSpec violation_system(const ViolationKind& kind, int d);
SystemSpec repaired_system(const ViolationKind& kind, int d);

/// Drops positive coefficients of monomials in F_k that do not involve u_k,
/// and positive off-diagonal entries of a linear L, by flipping their sign.
ReactionSpec sign_fixed(const ReactionSpec& reaction, std::size_t ncomp);

/// 1e-4 (box / 2 pi)^6 / ||A||_2.
double default_t_probe(const SystemSpec& spec, const Grid& grid);

/// Grid resolving the probe at min(eps) with kPointsPerWidth and holding the
/// probe at max(eps) inside the box.
Grid experiment_grid(int d, const std::vector<double>& eps, const Mollifier& mollifier = {});

/// Builds u0 (component k = 0, the rest probes) for each eps, records the
/// initial rate and the minimum after t_probe of component k, and fits
/// log|rate| against log eps. An eps that is not resolvable on the grid, or
/// whose propagator overflows, is dropped and listed in the report.
ViolationReport run_violation_experiment(const ViolationKind& kind, const std::vector<double>& eps, const Grid& grid,
                                         std::optional<double> t_probe = std::nullopt,
                                         const Mollifier& mollifier = {});

std::string to_json(const ViolationReport& report);

}  // namespace conecheck::probes
