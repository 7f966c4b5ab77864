#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "conecheck/core/matrix.hpp"

namespace conecheck {

struct ZeroReaction {
  friend bool operator==(const ZeroReaction&, const ZeroReaction&) = default;
};

/// F(u) = L u.
struct LinearReaction {
  MatrixN L;
  friend bool operator==(const LinearReaction&, const LinearReaction&) = default;
};

struct Monomial {
  double coeff = 0.0;
  std::vector<unsigned> exponents;  // one per component
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// F_k(u) = sum over terms[k] of coeff * prod_l u_l^exponents[l].
struct PolynomialReaction {
  std::vector<std::vector<Monomial>> terms;
  friend bool operator==(const PolynomialReaction&, const PolynomialReaction&) = default;
};

enum class ReactionKind { Zero, Linear, Polynomial };

/// The interaction term F : R^N -> R^N, entering the system as -F(u).
class ReactionSpec {
 public:
  ReactionSpec() = default;
  ReactionSpec(ZeroReaction r) : impl_(r) {}
  ReactionSpec(LinearReaction r) : impl_(std::move(r)) {}
  ReactionSpec(PolynomialReaction r) : impl_(std::move(r)) {}

  static ReactionSpec zero() { return ReactionSpec(ZeroReaction{}); }
  static ReactionSpec linear(MatrixN L) { return ReactionSpec(LinearReaction{std::move(L)}); }
  static ReactionSpec polynomial(std::vector<std::vector<Monomial>> terms) {
    return ReactionSpec(PolynomialReaction{std::move(terms)});
  }

  ReactionKind kind() const { return static_cast<ReactionKind>(impl_.index()); }
  bool is_zero() const { return kind() == ReactionKind::Zero; }

  /// Requires kind() == Linear.
  const MatrixN& linear_matrix() const { return std::get<LinearReaction>(impl_).L; }
  /// Requires kind() == Polynomial.
  const PolynomialReaction& polynomial_terms() const { return std::get<PolynomialReaction>(impl_); }

  /// Throws DimensionError when the reaction does not fit n components.
  void validate(std::size_t n) const;

  /// Writes F(u) into `out`. Both spans have one entry per component.
  void evaluate(std::span<const double> u, std::span<double> out) const;

  friend bool operator==(const ReactionSpec&, const ReactionSpec&) = default;

 private:
  std::variant<ZeroReaction, LinearReaction, PolynomialReaction> impl_;
};

const char* to_string(ReactionKind kind);

}  // namespace conecheck
