#pragma once

#include <cstddef>
#include <vector>

#include "conecheck/core/field.hpp"
#include "conecheck/core/grid.hpp"

namespace conecheck::probes {

/// Shape parameters shared by all probes, in the probe's own coordinate
/// y = x / eps.
///
/// A probe is g(y) * exp(-|y|^2 / (2 width^2)) where the polynomial g is the
/// degree-6 Taylor jet at y = 0 of target(y) * exp(+|y|^2 / (2 width^2)).
/// The probe therefore agrees with its target formula through sixth order at
/// the origin (derivatives up to order six, Lap^3 included, are those of the
/// target) while being analytic, positive for width <= 0.2 and spectrally
/// resolvable. Samples with |y| > cutoff * width are set to exactly zero;
/// at the default cutoff the envelope is below 1e-21 there.
struct Mollifier {
  double width = 0.2;
  double cutoff = 10.0;  // in units of width
};

/// Probe width must cover at least this many grid spacings.
inline constexpr double kMinPointsPerWidth = 2.5;
/// Spacing used when a grid is sized for a probe.
inline constexpr double kPointsPerWidth = 2.75;

enum class ProbeKind { Diffusion, Transport };

struct ProbeFamily {
  ProbeKind kind = ProbeKind::Diffusion;
  int axis = 0;   // transport only, 0-based
  int sign = 1;   // transport only, +1 or -1
  double epsilon = 1.0;
  Mollifier mollifier;
};

/// Target 2 - exp(y_1 + ... + y_d); value 1 and Lap^3 = -d^3 / eps^6 at the
/// origin.
Field build_diffusion_probe(const Grid& grid, double eps, const Mollifier& mollifier = {});

/// Target Q(y_perp) exp(-sign * y_axis) with Q(y_perp) = exp(-|y_perp|^2 / (2 width^2));
/// d/dx_axis at the origin is -sign / eps.
Field build_transport_probe(const Grid& grid, int axis, int sign, double eps, const Mollifier& mollifier = {});

Field build_probe(const Grid& grid, const ProbeFamily& family);

/// True when the probe at this eps is resolved and fits in the periodic box.
bool resolvable(const Grid& grid, double eps, const Mollifier& mollifier = {});

/// Grid with n points per axis whose spacing puts kPointsPerWidth samples
/// across the probe width at this eps.
Grid probe_grid(int d, std::size_t n, double eps, const Mollifier& mollifier = {});

/// Spectral Lap^3 of a one-component field, sampled at the origin.
double laplacian_cubed_at_origin(const Field& u);
/// Spectral d/dx_axis of a one-component field, sampled at the origin.
double derivative_at_origin(const Field& u, int axis);

struct RefinementLevel {
  double width;            // probe width in this level
  double points_per_width; // width / spacing
  double value;            // Lap^3 at origin
  double relative_error;   // |value + d^3| / d^3
};

/// Lap^3 at the origin of the eps = 1 diffusion probe on a fixed d-dimensional
/// grid with n points, widening the probe through points_per_width in
/// {2, 2.25, 2.5, 2.75} (the last level uses the default width).
std::vector<RefinementLevel> diffusion_refinement_study(int d, std::size_t n, const Mollifier& mollifier = {});

}  // namespace conecheck::probes
