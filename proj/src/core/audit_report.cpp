#include "conecheck/core/audit_report.hpp"

#include <json.hpp>

namespace conecheck {

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::DiagA:
      return "diag-A";
    case Rule::DiagGamma:
      return "diag-Gamma";
    case Rule::ReactionSign:
      return "reaction-sign";
    case Rule::AssumptionAkl:
      return "assumption-akl";
  }
  return "unknown";
}

namespace {
nlohmann::json site_json(const std::variant<MatrixSite, SampleSite>& site) {
  if (const auto* m = std::get_if<MatrixSite>(&site))
    return {{"matrix", m->matrix}, {"row", m->row + 1}, {"col", m->col + 1}};
  const auto& s = std::get<SampleSite>(site);
  return {{"component", s.component + 1}, {"sample", s.point}};
}

nlohmann::json violation_json(const Violation& v) {
  return {{"rule", to_string(v.rule)}, {"site", site_json(v.site)}, {"value", v.value}};
}
}  // namespace

std::string to_json(const AuditReport& report, int indent) {
  nlohmann::json j;
  j["overall"] = report.overall();
  j["diffusion_ok"] = report.diffusion_ok;
  j["transport_ok"] = report.transport_ok;
  j["reaction_ok"] = report.reaction_ok;
  j["reaction_evidence"] = report.reaction_ok ? "sampled" : "certificate";
  j["reaction_samples"] = report.reaction_samples;
  j["warnings"] = nlohmann::json::array();
  for (const auto& w : report.warnings) j["warnings"].push_back(violation_json(w));
  for (const auto& s : report.indeterminate)
    j["warnings"].push_back({{"rule", "reaction-indeterminate"}, {"site", site_json(s)}});
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) j["violations"].push_back(violation_json(v));
  return j.dump(indent);
}

}  // namespace conecheck
