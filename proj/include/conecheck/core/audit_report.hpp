#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace conecheck {

enum class Rule { DiagA, DiagGamma, ReactionSign, AssumptionAkl };

const char* to_string(Rule rule);

/// Entry (row, col) of a named matrix ("A", "Gamma1", "L", ...). 0-based.
struct MatrixSite {
  std::string matrix;
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const MatrixSite&, const MatrixSite&) = default;
};

/// Component k (0-based) of F evaluated at the nonnegative point s, s_k = 0.
struct SampleSite {
  std::size_t component = 0;
  std::vector<double> point;
  friend bool operator==(const SampleSite&, const SampleSite&) = default;
};

struct Violation {
  Rule rule;
  std::variant<MatrixSite, SampleSite> site;
  double value = 0.0;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of the necessary-condition audit.
///
/// `violations` holds failures of the theorem's conclusions (diagonal A and
/// Gamma^i, boundary sign of F). `warnings` holds failures of its hypothesis
/// (nonnegative off-diagonal entries of A) and reaction samples that could
/// not be evaluated. A passing reaction check is sampled evidence only.
struct AuditReport {
  bool diffusion_ok = true;
  bool transport_ok = true;
  bool reaction_ok = true;
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
  std::vector<SampleSite> indeterminate;
  std::size_t reaction_samples = 0;

  bool overall() const { return violations.empty(); }
  bool has_warnings() const { return !warnings.empty() || !indeterminate.empty(); }

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// JSON document. Matrix rows/cols and component indices are written 1-based
/// to match the usual mathematical notation.
std::string to_json(const AuditReport& report, int indent = 2);

}  // namespace conecheck
