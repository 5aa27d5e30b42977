#pragma once

// The grim-reaper generating-curve ODE in Euclidean arc length,
//
//   x' = cos(theta),  z' = sin(theta),
//   theta' = -(2/z^2) (a sin(theta) + z cos(theta)),
//
// together with an adaptive embedded Runge-Kutta 4(5) integrator with
// event detection, and the first integral z^4 / cos^2(theta) of the
// a = 0 family.
//
// theta is kept unwrapped (continuous in s) along an orbit; only
// report-level code reduces it to a chart.

#include <array>
#include <stdexcept>
#include <vector>

namespace grim {

/// One arc-length sample of a generating curve.
struct CurveState {
  double s{};
  double x{};
  double z{};
  double theta{};
};

/// Integration parameters.  switch_height controls the hand-off to the
/// implicit tail marcher that follows the orbit down to very small z,
/// where the explicit step size collapses like z^2; set it to 0 to force
/// purely explicit stepping.
struct OdeParams {
  double a = 1.0;
  double z_min = 1e-6;
  double s_max = 100.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double output_step = 0.01;
  double switch_height = 0.01;

  void validate() const;
};

enum class EventKind { GammaCrossing, ThetaZero, ThetaHalfPi, HeightCutoff, Budget };

const char* to_string(EventKind k);

struct OrbitEvent {
  EventKind kind;
  double s;
  CurveState state;
};

enum class Direction { Forward, Backward };

/// Samples and events of one integrated orbit, ordered by ascending s
/// (for Backward runs s is negative and the lists are reversed so the
/// ordering still holds).
struct IntegrationResult {
  std::vector<CurveState> samples;
  std::vector<OrbitEvent> events;
  EventKind termination{EventKind::Budget};
};

/// Step-size underflow or a non-recoverable step failure; carries the
/// last valid state.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, const CurveState& last)
      : std::runtime_error(what), last_state(last) {}
  CurveState last_state;
};

/// Right-hand side (dx/ds, dz/ds, dtheta/ds).  Throws on z <= 0.
std::array<double, 3> rhs(const CurveState& state, double a);

/// dtheta/ds at a state (third component of rhs).
double theta_rate(const CurveState& state, double a);

/// Integrates rhs from `initial` until z <= z_min (HeightCutoff) or
/// |s| >= s_max (Budget).  Samples land on the grid s(0) +/- k*output_step
/// plus the terminal point; sign-change events for theta, theta - pi/2,
/// a sin(theta) + z cos(theta) (the Gamma locus) and z - z_min are
/// located to |ds| < 1e-12 and polished to near round-off.
IntegrationResult integrate_orbit(const CurveState& initial, const OdeParams& params,
                                  Direction dir = Direction::Forward);

/// First integral of the a = 0 family: z^4 / cos^2(theta).  Returns
/// +infinity at |theta| = pi/2 (the orthogonal endpoints).
double first_integral_a0(const CurveState& state);

/// Residual of z''/(1 + z'^2) + 2/z = 0, the a = 0 graph equation.
double minimal_graph_residual(double z, double dz, double ddz);

/// Residual of u''/(1 + u'^2) + 2/u + 2u'/u^2 = 0, the a = 1 graph
/// equation satisfied by each branch of a bi-graph generating curve.
double graph_residual_a1(double u, double du, double ddu);

}  // namespace grim
