#include "conecheck/probes/probe.hpp"

#include <array>
#include <cmath>

#include "conecheck/core/errors.hpp"
#include "conecheck/core/matrix.hpp"
#include "conecheck/spectral/multipliers.hpp"
#include "conecheck/spectral/transform.hpp"

namespace conecheck::probes {

namespace {

constexpr int kJetOrder = 6;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_common(const Grid& grid, double eps, const Mollifier& m) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("probe scale eps must be positive");
  if (!(m.width > 0.0) || !(m.cutoff > 0.0)) throw PreconditionError("probe width and cutoff must be positive");
  if (m.cutoff * m.width * eps > grid.box() / 2.0)
    throw PreconditionError("probe cutoff radius exceeds half the box; enlarge the box or reduce eps");
}

// Every sample must be >= 0: the jet polynomial can turn negative for wide
// envelopes.
void check_nonnegative(const Field& u) {
  for (double v : u.values())
    if (v < 0.0) throw PreconditionError("probe would go negative; reduce the mollifier width");
}

struct Coords {
  std::array<double, Grid::kMaxDim> y{};
  double r2 = 0.0;
};

Coords scaled(const Grid& grid, std::size_t p, double eps) {
  Coords c;
  const auto idx = grid.unflatten(p);
  for (int a = 0; a < grid.dim(); ++a) {
    c.y[a] = grid.coordinate(idx[a]) / eps;
    c.r2 += c.y[a] * c.y[a];
  }
  return c;
}

}  // namespace

Field build_diffusion_probe(const Grid& grid, double eps, const Mollifier& m) {
  check_common(grid, eps, m);
  // Jet of (2 - e^S) e^{R/(2w^2)} with S = sum y, R = |y|^2: the product of
  // the series a_i S^i and b_j R^j, truncated at total degree i + 2j <= 6.
  std::array<double, kJetOrder + 1> a{};
  a[0] = 1.0;
  for (int i = 1; i <= kJetOrder; ++i) a[i] = -1.0 / factorial(i);
  std::array<double, kJetOrder / 2 + 1> b{};
  const double inv = 1.0 / (2.0 * m.width * m.width);
  for (int j = 0; j <= kJetOrder / 2; ++j) b[j] = std::pow(inv, j) / factorial(j);

  const double cutoff2 = m.cutoff * m.cutoff * m.width * m.width;
  Field u(grid, 1);
  auto out = u.component(0);
  for (std::size_t p = 0; p < grid.point_count(); ++p) {
    const Coords c = scaled(grid, p, eps);
    if (c.r2 > cutoff2) continue;
    double S = 0.0;
    for (int d = 0; d < grid.dim(); ++d) S += c.y[d];
    double g = 0.0;
    double Rj = 1.0;
    for (int j = 0; j <= kJetOrder / 2; ++j) {
      double Si = 1.0;
      for (int i = 0; i + 2 * j <= kJetOrder; ++i) {
        g += a[i] * b[j] * Si * Rj;
        Si *= S;
      }
      Rj *= c.r2;
    }
    out[p] = g * std::exp(-c.r2 * inv);
  }
  check_nonnegative(u);
  return u;
}

Field build_transport_probe(const Grid& grid, int axis, int sign, double eps, const Mollifier& m) {
  check_common(grid, eps, m);
  if (axis < 0 || axis >= grid.dim()) throw PreconditionError("transport probe axis out of range");
  if (sign != 1 && sign != -1) throw PreconditionError("transport probe sign must be +1 or -1");
  // Jet in t = y_axis of e^{-sign t} e^{t^2/(2w^2)}; the transverse factor of
  // the envelope is Q(y_perp) itself.
  const double inv = 1.0 / (2.0 * m.width * m.width);
  std::array<double, kJetOrder + 1> e{};
  std::array<double, kJetOrder + 1> q{};
  for (int i = 0; i <= kJetOrder; ++i) e[i] = std::pow(-static_cast<double>(sign), i) / factorial(i);
  for (int j = 0; 2 * j <= kJetOrder; ++j) q[2 * j] = std::pow(inv, j) / factorial(j);
  std::array<double, kJetOrder + 1> c{};
  for (int k = 0; k <= kJetOrder; ++k)
    for (int i = 0; i <= k; ++i) c[k] += e[i] * q[k - i];

  const double cutoff2 = m.cutoff * m.cutoff * m.width * m.width;
  Field u(grid, 1);
  auto out = u.component(0);
  for (std::size_t p = 0; p < grid.point_count(); ++p) {
    const Coords co = scaled(grid, p, eps);
    if (co.r2 > cutoff2) continue;
    const double t = co.y[axis];
    double g = 0.0;
    for (int k = kJetOrder; k >= 0; --k) g = g * t + c[k];
    out[p] = g * std::exp(-co.r2 * inv);
  }
  check_nonnegative(u);
  return u;
}

Field build_probe(const Grid& grid, const ProbeFamily& f) {
  if (f.kind == ProbeKind::Diffusion) return build_diffusion_probe(grid, f.epsilon, f.mollifier);
  return build_transport_probe(grid, f.axis, f.sign, f.epsilon, f.mollifier);
}

bool resolvable(const Grid& grid, double eps, const Mollifier& m) {
  return m.width * eps >= kMinPointsPerWidth * grid.spacing() && m.cutoff * m.width * eps <= grid.box() / 2.0;
}

Grid probe_grid(int d, std::size_t n, double eps, const Mollifier& m) {
  return Grid(d, n, static_cast<double>(n) * m.width * eps / kPointsPerWidth);
}

double laplacian_cubed_at_origin(const Field& u) {
  if (u.ncomp() != 1) throw DimensionError("expected a one-component field");
  const auto s = spectral::apply_laplacian_cubed(spectral::forward(u), MatrixN::identity(1));
  return spectral::inverse(s).at(0, u.grid().origin_index());
}

double derivative_at_origin(const Field& u, int axis) {
  if (u.ncomp() != 1) throw DimensionError("expected a one-component field");
  if (axis < 0 || axis >= u.grid().dim()) throw PreconditionError("axis out of range");
  std::vector<MatrixN> gammas(u.grid().dim(), MatrixN(1));
  gammas[axis] = MatrixN::identity(1);
  const auto s = spectral::apply_transport(spectral::forward(u), gammas);
  return spectral::inverse(s).at(0, u.grid().origin_index());
}

std::vector<RefinementLevel> diffusion_refinement_study(int d, std::size_t n, const Mollifier& m) {
  const Grid grid = probe_grid(d, n, 1.0, m);
  const double d3 = static_cast<double>(d * d * d);
  std::vector<RefinementLevel> levels;
  for (double ppw : {2.0, 2.25, 2.5, kPointsPerWidth}) {
    Mollifier level = m;
    level.width = ppw * grid.spacing();
    const double value = laplacian_cubed_at_origin(build_diffusion_probe(grid, 1.0, level));
    levels.push_back({level.width, ppw, value, std::abs(value + d3) / d3});
  }
  return levels;
}

}  // namespace conecheck::probes
