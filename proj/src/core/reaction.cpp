#include "conecheck/core/reaction.hpp"

#include <algorithm>
#include <cmath>

#include "conecheck/core/errors.hpp"

namespace conecheck {

namespace {
double ipow(double x, unsigned e) {
  double r = 1.0;
  while (e) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}
}  // namespace

void ReactionSpec::validate(std::size_t n) const {
  switch (kind()) {
    case ReactionKind::Zero:
      return;
    case ReactionKind::Linear:
      if (linear_matrix().size() != n) throw DimensionError("linear reaction matrix L must have side N");
      return;
    case ReactionKind::Polynomial: {
      const auto& terms = polynomial_terms().terms;
      if (terms.size() != n) throw DimensionError("polynomial reaction needs one term list per component");
      for (const auto& component : terms)
        for (const auto& m : component) {
          if (m.exponents.size() != n) throw DimensionError("monomial exponent vector must have length N");
          if (!std::isfinite(m.coeff)) throw DimensionError("monomial coefficient must be finite");
        }
      return;
    }
  }
}

void ReactionSpec::evaluate(std::span<const double> u, std::span<double> out) const {
  const std::size_t n = u.size();
  switch (kind()) {
    case ReactionKind::Zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case ReactionKind::Linear: {
      const MatrixN& L = linear_matrix();
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += L(k, l) * u[l];
        out[k] = acc;
      }
      return;
    }
    case ReactionKind::Polynomial: {
      const auto& terms = polynomial_terms().terms;
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (const auto& m : terms[k]) {
          double v = m.coeff;
          for (std::size_t l = 0; l < n; ++l)
            if (m.exponents[l]) v *= ipow(u[l], m.exponents[l]);
          acc += v;
        }
        out[k] = acc;
      }
      return;
    }
  }
}

const char* to_string(ReactionKind kind) {
  switch (kind) {
    case ReactionKind::Zero:
      return "zero";
    case ReactionKind::Linear:
      return "linear";
    case ReactionKind::Polynomial:
      return "polynomial";
  }
  return "unknown";
}

}  // namespace conecheck
