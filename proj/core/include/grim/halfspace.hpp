#pragma once

// Primitives of the upper half-space model of hyperbolic 3-space:
// the conformal metric (1/z^2)<,>_e, the horizontal Killing field
// xi = a d/dx + b d/dy, and the bridge between Euclidean and hyperbolic
// curvature data.  The hyperbolic normal N is never stored; every formula
// uses the Euclidean normal N_e together with the height z via N = z N_e.

#include <array>
#include <cmath>
#include <stdexcept>

namespace grim {

using Vec3 = std::array<double, 3>;

inline double dot_e(const Vec3& u, const Vec3& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline Vec3 cross_e(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1],
          u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

inline double norm_e(const Vec3& u) { return std::sqrt(dot_e(u, u)); }

/// A point of the model R^3_+ = {(x,y,z) : z > 0}.
struct HalfSpacePoint {
  double x{};
  double y{};
  double z{};
};

/// Parameters (a,b) of the horizontal Killing field xi = a d/dx + b d/dy.
/// The pair is stored as given; soliton problems reject (0,0) at their
/// own entry points.
struct KillingFieldParams {
  double a{};
  double b{};

  bool is_zero() const { return a == 0.0 && b == 0.0; }
};

/// Per-point curvature record: Euclidean mean curvature H_e, Euclidean
/// unit normal N_e, hyperbolic mean curvature H = z*H_e + (N_e)_3.
struct CurvatureData {
  double H_e{};
  Vec3 N_e{0.0, 0.0, 1.0};
  double H{};
};

/// Default tolerance for unit-normal and H-consistency validation.
inline constexpr double kConsistencyTol = 1e-10;

/// Hyperbolic inner product at p: (1/z^2) <u,v>_e.  Throws on z <= 0.
double hyp_inner(const HalfSpacePoint& p, const Vec3& u, const Vec3& v);

/// H = z*H_e + Ne3.  Throws on z <= 0.
double mean_curvature_from_euclidean(double z, double H_e, double Ne3);

/// Pointwise defect of the soliton equation, H - <N, xi>, evaluated as
/// H - (1/z) <N_e, (a,b,0)>_e.  Validates that c is internally consistent
/// (unit normal, H = z*H_e + (N_e)_3) within tol before evaluating.
double soliton_residual_pointwise(const CurvatureData& c, const HalfSpacePoint& p,
                                  const KillingFieldParams& k,
                                  double tol = kConsistencyTol);

}  // namespace grim
