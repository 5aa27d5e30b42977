#include "grim/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace grim {

namespace {
constexpr double kPi = std::numbers::pi;

int ksign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
}  // namespace

double gamma_curve(double theta) {
  const bool lower = theta > -kPi / 2.0 && theta < 0.0;
  const bool upper = theta > kPi / 2.0 && theta < kPi;
  if (!lower && !upper) {
    throw std::domain_error(
        "gamma_curve: theta must lie in (-pi/2, 0) or (pi/2, pi)");
  }
  return -std::tan(theta);
}

RegionTag classify_region(const PhasePoint& p) {
  if (!(p.z > 0.0)) throw std::domain_error("classify_region: z must be positive");
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  return {ksign(st), ksign(-(st + p.z * ct))};
}

IntegrationResult symmetry_dual(const IntegrationResult& orbit) {
  IntegrationResult dual;
  dual.termination = orbit.termination;
  dual.samples.reserve(orbit.samples.size());
  for (auto it = orbit.samples.rbegin(); it != orbit.samples.rend(); ++it) {
    dual.samples.push_back({-it->s, it->x, it->z, it->theta - kPi});
  }
  dual.events.reserve(orbit.events.size());
  for (auto it = orbit.events.rbegin(); it != orbit.events.rend(); ++it) {
    CurveState cs{-it->state.s, it->state.x, it->state.z, it->state.theta - kPi};
    dual.events.push_back({it->kind, cs.s, cs});
  }
  return dual;
}

OrbitReport classify_orbit(const IntegrationResult& forward,
                           const IntegrationResult& backward, double z0) {
  OrbitReport rep;
  rep.apex_height = z0;
  for (const auto& smp : forward.samples) {
    rep.apex_height = std::max(rep.apex_height, smp.z);
  }
  for (const auto& smp : backward.samples) {
    rep.apex_height = std::max(rep.apex_height, smp.z);
  }

  int n_gamma = 0;
  for (const auto& ev : forward.events) {
    if (ev.kind == EventKind::GammaCrossing && ev.s > 0.0) {
      rep.gamma_crossing_s = ev.s;
      ++n_gamma;
    }
  }
  if (n_gamma != 1) {
    throw ClassificationError("classify_orbit: expected exactly one forward "
                              "GammaCrossing, found " + std::to_string(n_gamma));
  }
  int n_halfpi = 0;
  for (const auto& ev : backward.events) {
    if (ev.kind == EventKind::ThetaHalfPi && ev.s < 0.0) {
      rep.theta_halfpi_crossing_s = ev.s;
      ++n_halfpi;
    }
  }
  if (n_halfpi != 1) {
    throw ClassificationError("classify_orbit: expected exactly one backward "
                              "ThetaHalfPi crossing, found " + std::to_string(n_halfpi));
  }
  if (forward.termination != EventKind::HeightCutoff) {
    throw ClassificationError("classify_orbit: forward orbit missing HeightCutoff "
                              "within the arc-length budget");
  }
  if (backward.termination != EventKind::HeightCutoff) {
    throw ClassificationError("classify_orbit: backward orbit missing HeightCutoff "
                              "within the arc-length budget");
  }

  // Monotone height decrease away from the apex in each direction.
  for (std::size_t i = 1; i < forward.samples.size(); ++i) {
    if (forward.samples[i].z > forward.samples[i - 1].z + 1e-12) {
      throw ClassificationError("classify_orbit: forward height not monotone");
    }
  }
  for (std::size_t i = 1; i < backward.samples.size(); ++i) {
    if (backward.samples[i].z < backward.samples[i - 1].z - 1e-12) {
      throw ClassificationError("classify_orbit: backward height not monotone");
    }
  }

  rep.forward_asymptote = forward.samples.back().theta;
  rep.backward_asymptote = backward.samples.front().theta;
  rep.is_bigraph = true;
  return rep;
}

OrbitReport trace_and_classify(double z0, const OdeParams& params) {
  if (params.a == 0.0) {
    throw std::domain_error("trace_and_classify: requires a != 0");
  }
  if (!(z0 > params.z_min)) {
    throw std::domain_error("trace_and_classify: z0 must exceed z_min");
  }
  const CurveState apex{0.0, 0.0, z0, 0.0};
  const auto fwd = integrate_orbit(apex, params, Direction::Forward);
  const auto bwd = integrate_orbit(apex, params, Direction::Backward);
  return classify_orbit(fwd, bwd, z0);
}

}  // namespace grim
