#pragma once

// The phase plane of the generating-curve system: the half-strip
// {(z, theta) : z > 0}, the zero-curvature locus z = -tan(theta), the
// monotonicity regions, the orbit symmetry map and orbit classification.
// Region tagging is pinned to the a = 1 chart; for other a the scaling
// equivalence (x, z, s, a) -> (lambda x, lambda z, lambda s, lambda a)
// maps the problem onto it.

#include <stdexcept>

#include "grim/ode.hpp"

namespace grim {

struct PhasePoint {
  double z{};
  double theta{};
};

/// Signs of dz/ds and dtheta/ds at a phase point (-1, 0, +1 each).
struct RegionTag {
  int dz_sign{};
  int dtheta_sign{};
};

class ClassificationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The curve Gamma: z = -tan(theta), defined for
/// theta in (-pi/2, 0) union (pi/2, pi) where the value is positive.
double gamma_curve(double theta);

/// Monotonicity-region tag at p (a = 1 chart):
/// dz_sign = sign(sin theta), dtheta_sign = sign(-(sin theta + z cos theta)).
RegionTag classify_region(const PhasePoint& p);

/// The orbit symmetry (s, x, z, theta) -> (-s, x, z, theta - pi),
/// with samples and events reversed so ordering by s is kept.
IntegrationResult symmetry_dual(const IntegrationResult& orbit);

struct OrbitReport {
  double apex_height{};
  double gamma_crossing_s{};       // unique forward Gamma crossing, > 0
  double theta_halfpi_crossing_s{};  // unique backward theta = pi/2 crossing, < 0
  double forward_asymptote{};      // terminal theta at the height cutoff
  double backward_asymptote{};
  bool is_bigraph{false};
};

/// Classifies the two halves of an orbit launched from an apex (z0, 0).
OrbitReport classify_orbit(const IntegrationResult& forward,
                           const IntegrationResult& backward, double z0);

/// Launches integrate_orbit from (s=0, x=0, z=z0, theta=0) in both
/// directions and classifies.  Requires params.a != 0.
OrbitReport trace_and_classify(double z0, const OdeParams& params);

}  // namespace grim
