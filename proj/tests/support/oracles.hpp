#pragma once

// Reference computations for tests. Nothing here calls the library's
// transform or exponential code.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "conecheck/core/field.hpp"
#include "conecheck/core/system.hpp"

namespace oracle {

using cd = std::complex<double>;

inline long freq(std::size_t i, std::size_t n) {
  return i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

// Full complex DFT of one component, axis by axis, O(n^(d+1)).
// sign = -1 forward (unnormalized), +1 inverse (unnormalized).
inline std::vector<cd> dft(std::vector<cd> a, int d, std::size_t n, int sign) {
  std::vector<cd> tw(n);
  for (std::size_t k = 0; k < n; ++k) tw[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / n);
  std::size_t stride = 1;
  for (int axis = d - 1; axis >= 0; --axis) {
    std::vector<cd> out(a.size());
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < a.size(); base += block)
      for (std::size_t s = 0; s < stride; ++s)
        for (std::size_t k = 0; k < n; ++k) {
          cd acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += a[base + s + j * stride] * tw[(j * k) % n];
          out[base + s + k * stride] = acc;
        }
    a.swap(out);
    stride *= n;
  }
  return a;
}

inline std::vector<cd> forward(const conecheck::Field& u, std::size_t k) {
  std::vector<cd> a(u.component(k).begin(), u.component(k).end());
  return dft(std::move(a), u.grid().dim(), u.grid().n(), -1);
}

// exp(t M) via the eigendecomposition M = V diag(lambda) V^-1.
inline Eigen::MatrixXcd expm_eig(const Eigen::MatrixXcd& M, double t) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  const Eigen::MatrixXcd& V = es.eigenvectors();
  Eigen::VectorXcd e = (es.eigenvalues() * t).array().exp();
  return V * e.asDiagonal() * V.inverse();
}

// Symbol -|xi|^6 A + i sum xi_j Gamma^j (- L) at full-layout index idx.
inline Eigen::MatrixXcd symbol(const conecheck::SystemSpec& spec, const conecheck::Grid& g, const std::vector<std::size_t>& idx,
                               bool include_L) {
  const std::size_t N = spec.ncomp();
  double k2 = 0.0;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  for (int a = 0; a < g.dim(); ++a) {
    const double xi = 2.0 * std::numbers::pi * freq(idx[a], g.n()) / g.box();
    k2 += xi * xi;
    const double odd = idx[a] == g.n() / 2 ? 0.0 : xi;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) M(r, c) += cd(0.0, odd * spec.transport(a)(r, c));
  }
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) M(r, c) -= k2 * k2 * k2 * spec.diffusion()(r, c);
  if (include_L && spec.reaction().kind() == conecheck::ReactionKind::Linear)
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) M(r, c) -= spec.reaction().linear_matrix()(r, c);
  return M;
}

// Exact solution of the linear system (F = 0 or F = L u) at time t.
inline conecheck::Field linear_solution(const conecheck::SystemSpec& spec, const conecheck::Field& u0, double t) {
  const auto& g = u0.grid();
  const std::size_t N = spec.ncomp(), P = g.point_count(), n = g.n();
  std::vector<std::vector<cd>> U(N);
  for (std::size_t k = 0; k < N; ++k) U[k] = forward(u0, k);
  std::vector<std::vector<cd>> V(N, std::vector<cd>(P));
  for (std::size_t p = 0; p < P; ++p) {
    std::vector<std::size_t> idx(g.dim());
    std::size_t rest = p;
    for (int a = g.dim() - 1; a >= 0; --a) {
      idx[a] = rest % n;
      rest /= n;
    }
    const Eigen::MatrixXcd E = expm_eig(symbol(spec, g, idx, true), t);
    for (std::size_t r = 0; r < N; ++r) {
      cd acc = 0.0;
      for (std::size_t c = 0; c < N; ++c) acc += E(r, c) * U[c][p];
      V[r][p] = acc;
    }
  }
  conecheck::Field out(g, N);
  for (std::size_t k = 0; k < N; ++k) {
    const auto back = dft(std::move(V[k]), g.dim(), n, +1);
    for (std::size_t p = 0; p < P; ++p) out.at(k, p) = back[p].real() / static_cast<double>(P);
  }
  return out;
}

// Scalar d=1 flow u_t = Lap^3 u: exp(-xi^6 t) per mode.
inline conecheck::Field polyharmonic_solution(const conecheck::Field& u0, double t) {
  const auto& g = u0.grid();
  auto U = forward(u0, 0);
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double xi = 2.0 * std::numbers::pi * freq(i, g.n()) / g.box();
    U[i] *= std::exp(-std::pow(xi, 6) * t);
  }
  const auto back = dft(std::move(U), 1, g.n(), +1);
  conecheck::Field out(g, 1);
  for (std::size_t i = 0; i < g.n(); ++i) out.at(0, i) = back[i].real() / static_cast<double>(g.n());
  return out;
}

inline double max_abs_diff(const conecheck::Field& a, const conecheck::Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace oracle
