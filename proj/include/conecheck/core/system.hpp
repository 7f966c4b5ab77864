#pragma once

#include <cstddef>
#include <vector>

#include "conecheck/core/matrix.hpp"
#include "conecheck/core/reaction.hpp"

namespace conecheck {

/// du/dt = A Lap^3 u + sum_i Gamma^i du/dx_i - F(u) on R^d with N components.
///
/// Construction validates shapes and that A + A^T is positive definite, so a
/// SystemSpec that exists is always well posed in that sense. Immutable.
class SystemSpec {
 public:
  SystemSpec(int d, MatrixN A, std::vector<MatrixN> gammas, ReactionSpec reaction);

  int dim() const { return d_; }
  std::size_t ncomp() const { return A_.size(); }
  const MatrixN& diffusion() const { return A_; }
  const std::vector<MatrixN>& transport() const { return gammas_; }
  const MatrixN& transport(int axis) const { return gammas_[axis]; }
  const ReactionSpec& reaction() const { return reaction_; }

  /// Copy with a different reaction term (shapes re-validated).
  SystemSpec with_reaction(ReactionSpec reaction) const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

 private:
  int d_;
  MatrixN A_;
  std::vector<MatrixN> gammas_;
  ReactionSpec reaction_;
};

}  // namespace conecheck
