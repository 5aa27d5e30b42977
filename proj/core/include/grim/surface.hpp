#pragma once

// Parametric meshes for the three rotational surface classes, curvature
// data along two independent routes (analytic from the generating-curve
// states, finite differences from the vertices), and numerical checks of
// the soliton equation, the rotational obstruction identities, and the
// graph form of the soliton PDE.

#include <array>
#include <cstddef>
#include <vector>

#include "grim/curve.hpp"
#include "grim/halfspace.hpp"

namespace grim {

enum class SurfaceProvenance { Parabolic, Spherical, HyperbolicCone };

struct SurfaceMesh {
  std::size_t ns{};
  std::size_t nt{};
  std::vector<double> s_values;            // size ns
  std::vector<double> t_values;            // size nt
  std::vector<HalfSpacePoint> vertices;    // (i, j) -> i*nt + j
  std::vector<CurvatureData> curvature;    // analytic route
  SurfaceProvenance provenance{SurfaceProvenance::Parabolic};

  std::size_t index(std::size_t i, std::size_t j) const { return i * nt + j; }
};

struct ResidualReport {
  double max_abs{};
  double mean_abs{};
  std::vector<double> per_vertex;
  double grid_spacing{};
};

/// Coefficients of the soliton defect of a spherical rotational surface
/// in the basis {1, cos t, sin t}:
///   c0 = (z/2)(theta' + z'/x) + x',  c1 = a z'/z,  c2 = b z'/z.
struct FourierObstruction {
  std::vector<double> s;
  std::vector<double> c0, c1, c2;
};

/// Per-sample evaluation of the two t-separated sides of the hyperbolic
/// rotational soliton identity: L must vanish (H = 0) and R must vanish
/// (profile line parallel to (a, b)) for a translator to exist.
struct ConeCheckReport {
  std::vector<double> s;
  std::vector<double> L, R;
  double max_abs_L{};
  double max_abs_R{};
};

class SingularMetricError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cylinder over the generating curve with horizontal rulings:
/// Psi(s,t) = (x(s), t, z(s)); N_e = (-z', 0, x'), H_e = theta'/2.
SurfaceMesh extrude_parabolic(const GeneratingCurve& curve, double t_lo,
                              double t_hi, std::size_t nt);

/// Surface of revolution Psi(s,t) = (x(s) cos t, x(s) sin t, z(s)).
/// The profile must stay off the axis x = 0.
SurfaceMesh revolve_spherical(const GeneratingCurve& curve, std::size_t nt);

FourierObstruction spherical_obstruction(const GeneratingCurve& curve,
                                         const KillingFieldParams& k);

/// profile: arc-length samples (x(s), y(s)) of a curve at height 1 with
/// uniform spacing ds; derivatives are taken by second-order differences.
ConeCheckReport hyperbolic_cone_check(const std::vector<std::array<double, 2>>& profile,
                                      const KillingFieldParams& k, double ds);

/// Curvature data recomputed from the vertices alone via second-order
/// central differences of the fundamental forms (one-sided at borders).
/// Requires uniform parameter grids.
std::vector<CurvatureData> curvature_fd(const SurfaceMesh& mesh);

/// The hyperbolic mean curvature column of curvature_fd.
std::vector<double> mesh_mean_curvature_fd(const SurfaceMesh& mesh);

enum class CurvatureSource { Analytic, FiniteDifference };

/// Per-vertex H - (1/z) <N_e, (a,b,0)>_e with H and N_e from the chosen
/// route; max/mean are accumulated with an order-independent pairwise
/// reduction.
ResidualReport soliton_residual(const SurfaceMesh& mesh, const KillingFieldParams& k,
                                CurvatureSource source);

/// Central-difference residual of the graph form of the soliton equation,
///   div(Du / W) + (2/(u^2 W)) (u + a u_x + b u_y),  W = sqrt(1 + |Du|^2),
/// on the interior nodes of a uniform grid (u indexed ix*ny + iy).
ResidualReport graph_pde_residual(const std::vector<double>& u, std::size_t nx,
                                  std::size_t ny, const KillingFieldParams& k,
                                  double h);

// Profile constructors for the rotational checks.
GeneratingCurve horizontal_profile(double height, double x_lo, double x_hi,
                                   std::size_t n);
GeneratingCurve hemisphere_profile(double s_lo, double s_hi, std::size_t n);

/// Order-independent pairwise sum.
double pairwise_sum(const std::vector<double>& v);

}  // namespace grim
