#include "grim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grim/quadrature.hpp"

namespace grim {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> rates_from_rhs(const std::vector<CurveState>& samples, double a) {
  std::vector<double> r;
  r.reserve(samples.size());
  for (const auto& st : samples) r.push_back(theta_rate(st, a));
  return r;
}

void insert_state(GeneratingCurve& curve, const CurveState& st) {
  auto it = std::lower_bound(curve.samples.begin(), curve.samples.end(), st.s,
                             [](const CurveState& c, double s) { return c.s < s; });
  const std::size_t idx = static_cast<std::size_t>(it - curve.samples.begin());
  if (it != curve.samples.end() && std::abs(it->s - st.s) <= 1e-13) {
    *it = st;
    curve.theta_rate[idx] = theta_rate(st, curve.a);
  } else if (idx > 0 && std::abs(curve.samples[idx - 1].s - st.s) <= 1e-13) {
    curve.samples[idx - 1] = st;
    curve.theta_rate[idx - 1] = theta_rate(st, curve.a);
    curve.turning_index = idx - 1;
    return;
  } else {
    curve.samples.insert(it, st);
    curve.theta_rate.insert(curve.theta_rate.begin() + static_cast<long>(idx),
                            theta_rate(st, curve.a));
  }
  curve.turning_index = idx;
}

GeneratingCurve concatenate(const IntegrationResult& bwd, const IntegrationResult& fwd,
                            double a, CurveFamily family) {
  if (bwd.termination != EventKind::HeightCutoff ||
      fwd.termination != EventKind::HeightCutoff) {
    throw std::runtime_error(
        "curve construction: orbit did not reach the height cutoff within s_max");
  }
  GeneratingCurve curve;
  curve.family = family;
  curve.a = a;
  curve.samples = bwd.samples;  // ascending s, ends at the apex
  curve.samples.insert(curve.samples.end(), fwd.samples.begin() + 1,
                       fwd.samples.end());
  curve.theta_rate = rates_from_rhs(curve.samples, a);
  curve.apex_height = 0.0;
  for (const auto& st : curve.samples) {
    curve.apex_height = std::max(curve.apex_height, st.z);
  }
  return curve;
}

}  // namespace

const char* to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::MinimalReaper: return "MinimalReaper";
    case CurveFamily::Reaper: return "Reaper";
    case CurveFamily::VerticalPlane: return "VerticalPlane";
    case CurveFamily::Profile: return "Profile";
  }
  return "Unknown";
}

GeneratingCurve build_reaper(double z0, double a, const OdeParams& params) {
  if (a == 0.0) {
    throw std::invalid_argument(
        "build_reaper: a must be nonzero; use build_minimal_reaper for a = 0");
  }
  OdeParams q = params;
  q.a = a;
  if (!(z0 > q.z_min)) {
    throw std::domain_error("build_reaper: z0 must exceed z_min");
  }
  const CurveState apex{0.0, 0.0, z0, 0.0};
  const auto fwd = integrate_orbit(apex, q, Direction::Forward);
  const auto bwd = integrate_orbit(apex, q, Direction::Backward);
  GeneratingCurve curve = concatenate(bwd, fwd, a, CurveFamily::Reaper);
  for (const auto& ev : bwd.events) {
    if (ev.kind == EventKind::ThetaHalfPi) {
      insert_state(curve, ev.state);
      break;
    }
  }
  return curve;
}

GeneratingCurve build_minimal_reaper(double z0, const OdeParams& params) {
  OdeParams q = params;
  q.a = 0.0;
  if (!(z0 > q.z_min)) {
    throw std::domain_error("build_minimal_reaper: z0 must exceed z_min");
  }
  const CurveState apex{0.0, 0.0, z0, 0.0};
  const auto fwd = integrate_orbit(apex, q, Direction::Forward);
  const auto bwd = integrate_orbit(apex, q, Direction::Backward);
  return concatenate(bwd, fwd, 0.0, CurveFamily::MinimalReaper);
}

GeneratingCurve vertical_plane_curve(double x0, double z_lo, double z_hi) {
  if (!(z_lo > 0.0) || !(z_hi > z_lo)) {
    throw std::domain_error("vertical_plane_curve: need 0 < z_lo < z_hi");
  }
  GeneratingCurve curve;
  curve.family = CurveFamily::VerticalPlane;
  curve.a = 0.0;
  curve.samples = {{0.0, x0, z_lo, kPi / 2.0}, {z_hi - z_lo, x0, z_hi, kPi / 2.0}};
  curve.theta_rate = {0.0, 0.0};
  curve.apex_height = z_hi;
  return curve;
}

double half_width(double z0, double quad_tol) {
  if (!(z0 > 0.0)) throw std::domain_error("half_width: z0 must be positive");
  if (!(quad_tol > 0.0)) throw std::domain_error("half_width: quad_tol must be positive");
  const double unit = integrate_adaptive(
      [](double u) { return 0.5 * std::sqrt(std::sin(u)); }, 0.0, kPi / 2.0,
      quad_tol / std::max(z0, 1.0));
  return z0 * unit;
}

double minimal_x_span(const GeneratingCurve& curve) {
  if (curve.family != CurveFamily::MinimalReaper) {
    throw std::invalid_argument("minimal_x_span: expects a MinimalReaper curve");
  }
  if (curve.samples.size() < 4) {
    throw std::invalid_argument("minimal_x_span: too few samples");
  }
  auto intercept = [](const CurveState& outer, const CurveState& inner) {
    // Linear extrapolation of x(z) to z = 0 from the outermost two samples.
    return outer.x - outer.z * (inner.x - outer.x) / (inner.z - outer.z);
  };
  const double left = intercept(curve.samples.front(), curve.samples[1]);
  const double right = intercept(curve.samples.back(),
                                 curve.samples[curve.samples.size() - 2]);
  return right - left;
}

BiGraph to_bigraph(const GeneratingCurve& curve) {
  if (curve.family == CurveFamily::MinimalReaper) {
    throw std::invalid_argument(
        "to_bigraph: a minimal reaper is a single graph over the x-axis; "
        "use its samples directly");
  }
  if (curve.family != CurveFamily::Reaper || !curve.turning_index) {
    throw std::invalid_argument("to_bigraph: expects a Reaper curve with a turning point");
  }
  const std::size_t ti = *curve.turning_index;
  BiGraph bg;
  // Before the turning point x decreases in s; reversed it is the lower
  // branch, running from the turning point out to x -> +infinity.
  for (std::size_t i = ti + 1; i-- > 0;) {
    bg.lower.emplace_back(curve.samples[i].x, curve.samples[i].z);
  }
  for (std::size_t i = ti; i < curve.samples.size(); ++i) {
    bg.upper.emplace_back(curve.samples[i].x, curve.samples[i].z);
  }
  auto strictly_increasing_x = [](const std::vector<std::pair<double, double>>& br) {
    for (std::size_t i = 1; i < br.size(); ++i) {
      if (!(br[i].first > br[i - 1].first)) return false;
    }
    return true;
  };
  if (!strictly_increasing_x(bg.lower) || !strictly_increasing_x(bg.upper)) {
    throw std::runtime_error("to_bigraph: branch is not a graph over the x-axis");
  }
  return bg;
}

GeneratingCurve resample_uniform(const GeneratingCurve& curve, std::size_t ns) {
  if (ns < 2) throw std::invalid_argument("resample_uniform: need ns >= 2");
  if (curve.samples.size() < 2) {
    throw std::invalid_argument("resample_uniform: need at least two samples");
  }
  const double s0 = curve.samples.front().s;
  const double s1 = curve.samples.back().s;
  GeneratingCurve out;
  out.family = curve.family;
  out.a = curve.a;
  out.samples.reserve(ns);
  out.theta_rate.reserve(ns);

  std::size_t seg = 0;
  for (std::size_t k = 0; k < ns; ++k) {
    const double s = s0 + (s1 - s0) * static_cast<double>(k) /
                              static_cast<double>(ns - 1);
    while (seg + 2 < curve.samples.size() && curve.samples[seg + 1].s <= s) ++seg;
    const CurveState& p = curve.samples[seg];
    const CurveState& q = curve.samples[seg + 1];
    const double h = q.s - p.s;
    const double t = (s - p.s) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    auto hermite = [&](double v0, double m0, double v1, double m1) {
      return h00 * v0 + h10 * h * m0 + h01 * v1 + h11 * h * m1;
    };
    CurveState st;
    st.s = s;
    st.x = hermite(p.x, std::cos(p.theta), q.x, std::cos(q.theta));
    st.z = hermite(p.z, std::sin(p.theta), q.z, std::sin(q.theta));
    st.theta = hermite(p.theta, curve.theta_rate[seg], q.theta,
                       curve.theta_rate[seg + 1]);
    out.samples.push_back(st);
    if (curve.family == CurveFamily::Profile) {
      out.theta_rate.push_back((1.0 - t) * curve.theta_rate[seg] +
                               t * curve.theta_rate[seg + 1]);
    } else if (curve.family == CurveFamily::VerticalPlane) {
      out.theta_rate.push_back(0.0);
    } else {
      out.theta_rate.push_back(theta_rate(st, curve.a));
    }
  }
  out.apex_height = 0.0;
  for (const auto& st : out.samples) {
    out.apex_height = std::max(out.apex_height, st.z);
  }
  return out;
}

}  // namespace grim
