#pragma once

#include <Eigen/Dense>

namespace conecheck::spectral {

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants (Higham, SIAM J. Matrix Anal. Appl. 26(4), 2005).
///
/// The Pade degree is the smallest of {3, 5, 7, 9, 13} whose backward-error
/// bound theta_m covers ||M||_1; beyond theta_13 the matrix is scaled by 2^-s
/// and the degree-13 approximant is squared s times. Deterministic.
/// Throws NumericalError on non-finite input or output.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M);

}  // namespace conecheck::spectral
