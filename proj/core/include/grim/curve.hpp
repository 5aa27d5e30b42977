#pragma once

// Construction of the generating curves of the two grim-reaper families:
// the minimal family (a = 0, concave arches meeting the x-axis
// orthogonally) and the bi-graph family (a != 0), plus the degenerate
// vertical plane and derived measurements.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grim/ode.hpp"

namespace grim {

enum class CurveFamily { MinimalReaper, Reaper, VerticalPlane, Profile };

const char* to_string(CurveFamily f);

struct GeneratingCurve {
  std::vector<CurveState> samples;   // ascending s
  std::vector<double> theta_rate;    // dtheta/ds per sample
  CurveFamily family{CurveFamily::Profile};
  double apex_height{};
  std::optional<std::size_t> turning_index;  // theta = pi/2 sample, if any
  double a{};                        // Killing parameter the curve solves
};

/// Bi-graph decomposition: two branches of (x, u) pairs, each strictly
/// monotone in x, sharing the turning point.
struct BiGraph {
  std::vector<std::pair<double, double>> lower;
  std::vector<std::pair<double, double>> upper;
};

/// The curve of the family G(z0), a != 0: integrated apex-outward in both
/// directions down to the height cutoff, with the exact turning state
/// inserted as a sample.
GeneratingCurve build_reaper(double z0, double a, const OdeParams& params);

/// The curve of the minimal family G0(z0): a = 0, symmetric concave arch.
GeneratingCurve build_minimal_reaper(double z0, const OdeParams& params);

/// Degenerate vertical-line generating curve (theta = pi/2) at abscissa x0.
GeneratingCurve vertical_plane_curve(double x0, double z_lo, double z_hi);

/// Half of the x-axis span of G0(z0):
/// w(z0) = integral_0^z0 z^2 / sqrt(z0^4 - z^4) dz, by adaptive quadrature
/// after the substitution z = z0 sqrt(sin u) that removes the endpoint
/// singularity.
double half_width(double z0, double quad_tol);

/// x-axis span of a minimal-reaper curve, with the two intercepts
/// extrapolated linearly from the last two samples of each tail.
double minimal_x_span(const GeneratingCurve& curve);

/// Splits a Reaper curve at its turning point into the two graph branches.
BiGraph to_bigraph(const GeneratingCurve& curve);

/// Resamples a curve onto ns uniformly spaced arc-length values by cubic
/// Hermite interpolation (derivatives are known analytically per sample).
GeneratingCurve resample_uniform(const GeneratingCurve& curve, std::size_t ns);

}  // namespace grim
