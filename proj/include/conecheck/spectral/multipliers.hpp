#pragma once

#include <vector>

#include "conecheck/core/matrix.hpp"
#include "conecheck/spectral/transform.hpp"

namespace conecheck::spectral {

/// out(xi) = -|xi|^6 A s(xi).
SpectrumField apply_laplacian_cubed(const SpectrumField& s, const MatrixN& A);

/// out(xi) = i sum_j xi_j Gamma^j s(xi), Nyquist odd multipliers zeroed.
SpectrumField apply_transport(const SpectrumField& s, const std::vector<MatrixN>& gammas);

/// Zeroes every mode outside the 2/3-rule window.
void dealias(SpectrumField& s);

}  // namespace conecheck::spectral
