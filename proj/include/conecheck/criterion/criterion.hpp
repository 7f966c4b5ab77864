#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conecheck/core/audit_report.hpp"
#include "conecheck/core/matrix.hpp"
#include "conecheck/core/reaction.hpp"
#include "conecheck/core/system.hpp"

namespace conecheck::criterion {

/// Reaction values above this count as a boundary-sign violation.
inline constexpr double kSignTolerance = 1e-12;

/// How the boundary sign condition F_k(s)|_{s_k = 0} <= 0 is probed.
///
/// For each component k: the origin, every unit vector e_l (l != k), every
/// scaled unit vector scale * e_l, then `samples_per_component` random points
/// per scale with s_l uniform in [0, scale] for l != k.
struct SignSampler {
  std::size_t samples_per_component = 256;
  std::vector<double> magnitude_scales{0.1, 1.0, 10.0};
  std::uint64_t seed = 0;

  void validate() const;
};

/// Hypothesis of the theorem: off-diagonal a_kj >= 0. Returns every k != j
/// with a_kj < 0 (rule assumption-akl).
std::vector<Violation> check_assumption_offdiag_nonneg(const MatrixN& A);

/// Every off-diagonal entry with |m_kj| > tol. `name` labels the site
/// ("A", "Gamma1", ...); the rule is diag-A for "A" and diag-Gamma otherwise.
std::vector<Violation> check_diagonality(const MatrixN& M, double tol = 0.0, const std::string& name = "A");

struct BoundarySignResult {
  std::vector<Violation> violations;
  std::vector<SampleSite> indeterminate;  // samples where F was not finite
  std::size_t samples = 0;
};

BoundarySignResult check_reaction_boundary_sign(const ReactionSpec& reaction, std::size_t N, const SignSampler& sampler);

/// Off-diagonal entries b_ij > 0 of a linear reaction matrix (site "L").
std::vector<Violation> check_essentially_nonpositive(const MatrixN& L);

/// Runs all checks. Pure: identical inputs give identical reports.
AuditReport audit(const SystemSpec& spec, const SignSampler& sampler, double diag_tol = 0.0);

}  // namespace conecheck::criterion
