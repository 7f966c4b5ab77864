#include "conecheck/criterion/criterion.hpp"

#include <cmath>
#include <random>

#include "conecheck/core/errors.hpp"

namespace conecheck::criterion {

namespace {

// Uniform [0, 1) from the top 53 bits; independent of the standard library's
// distribution implementation so samples are reproducible across toolchains.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void SignSampler::validate() const {
  if (samples_per_component < 1) throw PreconditionError("sign sampler needs at least one sample per component");
  for (double s : magnitude_scales)
    if (!(s > 0.0) || !std::isfinite(s)) throw PreconditionError("sign sampler scales must be positive");
}

std::vector<Violation> check_assumption_offdiag_nonneg(const MatrixN& A) {
  std::vector<Violation> out;
  for (std::size_t k = 0; k < A.size(); ++k)
    for (std::size_t j = 0; j < A.size(); ++j)
      if (k != j && A(k, j) < 0.0) out.push_back({Rule::AssumptionAkl, MatrixSite{"A", k, j}, A(k, j)});
  return out;
}

std::vector<Violation> check_diagonality(const MatrixN& M, double tol, const std::string& name) {
  if (!(tol >= 0.0)) throw PreconditionError("diagonality tolerance must be >= 0");
  const Rule rule = name == "A" ? Rule::DiagA : Rule::DiagGamma;
  std::vector<Violation> out;
  for (std::size_t k = 0; k < M.size(); ++k)
    for (std::size_t j = 0; j < M.size(); ++j)
      if (k != j && std::abs(M(k, j)) > tol) out.push_back({rule, MatrixSite{name, k, j}, M(k, j)});
  return out;
}

BoundarySignResult check_reaction_boundary_sign(const ReactionSpec& reaction, std::size_t N, const SignSampler& sampler) {
  sampler.validate();
  reaction.validate(N);
  BoundarySignResult result;
  if (reaction.is_zero()) return result;

  std::mt19937_64 rng(sampler.seed);
  std::vector<double> value(N);
  const auto probe = [&](std::size_t k, const std::vector<double>& s) {
    ++result.samples;
    reaction.evaluate(s, value);
    if (!std::isfinite(value[k]))
      result.indeterminate.push_back({k, s});
    else if (value[k] > kSignTolerance)
      result.violations.push_back({Rule::ReactionSign, SampleSite{k, s}, value[k]});
  };

  for (std::size_t k = 0; k < N; ++k) {
    std::vector<double> s(N, 0.0);
    probe(k, s);
    for (std::size_t l = 0; l < N; ++l) {
      if (l == k) continue;
      s.assign(N, 0.0);
      s[l] = 1.0;
      probe(k, s);
      for (double scale : sampler.magnitude_scales) {
        s[l] = scale;
        probe(k, s);
      }
    }
    for (double scale : sampler.magnitude_scales) {
      for (std::size_t i = 0; i < sampler.samples_per_component; ++i) {
        for (std::size_t l = 0; l < N; ++l) s[l] = l == k ? 0.0 : scale * unit_uniform(rng);
        probe(k, s);
      }
    }
  }
  return result;
}

std::vector<Violation> check_essentially_nonpositive(const MatrixN& L) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j)
      if (i != j && L(i, j) > 0.0) out.push_back({Rule::ReactionSign, MatrixSite{"L", i, j}, L(i, j)});
  return out;
}

AuditReport audit(const SystemSpec& spec, const SignSampler& sampler, double diag_tol) {
  AuditReport report;
  report.warnings = check_assumption_offdiag_nonneg(spec.diffusion());

  auto diag_a = check_diagonality(spec.diffusion(), diag_tol, "A");
  report.diffusion_ok = diag_a.empty();
  report.violations.insert(report.violations.end(), diag_a.begin(), diag_a.end());

  for (int i = 0; i < spec.dim(); ++i) {
    auto diag_g = check_diagonality(spec.transport(i), diag_tol, "Gamma" + std::to_string(i + 1));
    if (!diag_g.empty()) report.transport_ok = false;
    report.violations.insert(report.violations.end(), diag_g.begin(), diag_g.end());
  }

  auto sign = check_reaction_boundary_sign(spec.reaction(), spec.ncomp(), sampler);
  report.reaction_ok = sign.violations.empty();
  report.reaction_samples = sign.samples;
  report.violations.insert(report.violations.end(), sign.violations.begin(), sign.violations.end());
  report.indeterminate = std::move(sign.indeterminate);
  return report;
}

}  // namespace conecheck::criterion
