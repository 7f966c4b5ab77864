#include "conecheck/core/system.hpp"

#include "conecheck/core/errors.hpp"

namespace conecheck {

SystemSpec::SystemSpec(int d, MatrixN A, std::vector<MatrixN> gammas, ReactionSpec reaction)
    : d_(d), A_(std::move(A)), gammas_(std::move(gammas)), reaction_(std::move(reaction)) {
  if (d_ < 1) throw DimensionError("spatial dimension d must be >= 1");
  if (A_.size() == 0) throw DimensionError("system needs at least one component");
  if (gammas_.size() != static_cast<std::size_t>(d_))
    throw DimensionError("expected exactly d transport matrices Gamma^1..Gamma^d");
  for (const auto& g : gammas_)
    if (g.size() != A_.size()) throw DimensionError("transport matrices must have side N");
  reaction_.validate(A_.size());
  const double lambda = A_.min_symmetric_eigenvalue();
  if (!(lambda > 0.0)) throw PositivityError(lambda);
}

SystemSpec SystemSpec::with_reaction(ReactionSpec reaction) const {
  return SystemSpec(d_, A_, gammas_, std::move(reaction));
}

}  // namespace conecheck
