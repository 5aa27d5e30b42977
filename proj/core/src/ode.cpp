#include "grim/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace grim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinStep = 1e-14;
constexpr double kEventBracket = 1e-13;  // bisection width in s

using Y = std::array<double, 3>;  // (x, z, theta)

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b (order 5) minus bhat (order 4), applied to k1..k7.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  double a;        // Killing parameter along d/dx
  double dirsgn;   // +1 forward in s, -1 backward

  bool deriv(const Y& y, Y& dy) const {
    const double z = y[1];
    if (!(z > 0.0) || !std::isfinite(z)) return false;
    const double st = std::sin(y[2]);
    const double ct = std::cos(y[2]);
    dy[0] = dirsgn * ct;
    dy[1] = dirsgn * st;
    dy[2] = dirsgn * (-(2.0 / (z * z)) * (a * st + z * ct));
    return true;
  }

  // One embedded step of size h.  Returns false if a stage left the
  // domain.  err is the scaled error norm of the 4(5) pair.
  bool try_step(const Y& y0, double h, double abs_tol, double rel_tol, Y& y5,
                double& err) const {
    Y k1, k2, k3, k4, k5, k6, k7, yt;
    if (!deriv(y0, k1)) return false;
    for (int i = 0; i < 3; ++i) yt[i] = y0[i] + h * a21 * k1[i];
    if (!deriv(yt, k2)) return false;
    for (int i = 0; i < 3; ++i) yt[i] = y0[i] + h * (a31 * k1[i] + a32 * k2[i]);
    if (!deriv(yt, k3)) return false;
    for (int i = 0; i < 3; ++i)
      yt[i] = y0[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    if (!deriv(yt, k4)) return false;
    for (int i = 0; i < 3; ++i)
      yt[i] = y0[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    if (!deriv(yt, k5)) return false;
    for (int i = 0; i < 3; ++i)
      yt[i] = y0[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    if (!deriv(yt, k6)) return false;
    for (int i = 0; i < 3; ++i)
      y5[i] = y0[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
    if (!deriv(y5, k7)) return false;

    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double de = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y5[i]));
      sum += (de / sc) * (de / sc);
    }
    err = std::sqrt(sum / 3.0);
    return std::isfinite(err);
  }

  // Full-order evaluation at offset t inside an accepted step.
  Y eval_within(const Y& y0, double t, double abs_tol, double rel_tol) const {
    if (t == 0.0) return y0;
    Y y;
    double err;
    if (!try_step(y0, t, abs_tol, rel_tol, y, err)) {
      // Interior of an accepted step; a failure here means the step grazed
      // the boundary.  Fall back to the step start.
      return y0;
    }
    return y;
  }
};

int ksign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

void OdeParams::validate() const {
  if (!(z_min > 0.0)) throw std::domain_error("OdeParams: z_min must be positive");
  if (!(s_max > 0.0)) throw std::domain_error("OdeParams: s_max must be positive");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
    throw std::domain_error("OdeParams: rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2))
    throw std::domain_error("OdeParams: abs_tol must lie in (0, 1e-2]");
  if (!(output_step > 0.0))
    throw std::domain_error("OdeParams: output_step must be positive");
  if (switch_height < 0.0)
    throw std::domain_error("OdeParams: switch_height must be >= 0");
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::GammaCrossing: return "GammaCrossing";
    case EventKind::ThetaZero: return "ThetaZero";
    case EventKind::ThetaHalfPi: return "ThetaHalfPi";
    case EventKind::HeightCutoff: return "HeightCutoff";
    case EventKind::Budget: return "Budget";
  }
  return "Unknown";
}

std::array<double, 3> rhs(const CurveState& state, double a) {
  if (!(state.z > 0.0)) throw std::domain_error("rhs: z must be positive");
  const double st = std::sin(state.theta);
  const double ct = std::cos(state.theta);
  return {ct, st, -(2.0 / (state.z * state.z)) * (a * st + state.z * ct)};
}

double theta_rate(const CurveState& state, double a) { return rhs(state, a)[2]; }

double first_integral_a0(const CurveState& state) {
  const double c = std::cos(state.theta);
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  const double r = (state.z * state.z) / c;
  return r * r;
}

double minimal_graph_residual(double z, double dz, double ddz) {
  if (!(z > 0.0)) throw std::domain_error("minimal_graph_residual: z must be positive");
  return ddz / (1.0 + dz * dz) + 2.0 / z;
}

double graph_residual_a1(double u, double du, double ddu) {
  if (!(u > 0.0)) throw std::domain_error("graph_residual_a1: u must be positive");
  return ddu / (1.0 + du * du) + 2.0 / u + 2.0 * du / (u * u);
}

namespace {

struct OrbitBuilder {
  const OdeParams& p;
  Stepper st;
  double s0;                       // physical s of the initial state
  std::vector<CurveState> samples; // in internal-time order
  std::vector<OrbitEvent> events;
  EventKind termination = EventKind::Budget;
  double last_tau = -1.0;

  CurveState to_state(double tau, const Y& y) const {
    return {s0 + st.dirsgn * tau, y[0], y[1], y[2]};
  }

  void push_sample(double tau, const Y& y) {
    if (!samples.empty() && tau - last_tau <= 1e-13) {
      samples.back() = to_state(tau, y);  // refine a coinciding endpoint
      return;
    }
    samples.push_back(to_state(tau, y));
    last_tau = tau;
  }

  void push_event(EventKind kind, double tau, const Y& y) {
    const CurveState cs = to_state(tau, y);
    events.push_back({kind, cs.s, cs});
  }

  // Event functions indexed 0..3 on the physical state.
  double evf(int which, const Y& y) const {
    switch (which) {
      case 0: return y[2];
      case 1: return y[2] - kPi / 2.0;
      case 2: return p.a * std::sin(y[2]) + y[1] * std::cos(y[2]);
      default: return y[1] - p.z_min;
    }
  }

  static EventKind kind_of(int which) {
    switch (which) {
      case 0: return EventKind::ThetaZero;
      case 1: return EventKind::ThetaHalfPi;
      case 2: return EventKind::GammaCrossing;
      default: return EventKind::HeightCutoff;
    }
  }

  struct Located {
    int which;
    double t;
    Y y;
  };

  // Bisection to a bracket < kEventBracket, then secant polish to drive
  // the event function to round-off.
  Located locate(int which, const Y& y0, double h, double g0, double g1) const {
    auto g_at = [&](double t) {
      return evf(which, st.eval_within(y0, t, p.abs_tol, p.rel_tol));
    };
    double lo = 0.0, hi = h, glo = g0, ghi = g1;
    while (hi - lo > kEventBracket) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g_at(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        glo = ghi = 0.0;
        break;
      }
      if (ksign(gm) == ksign(glo)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
        ghi = gm;
      }
    }
    double ta = lo, tb = hi, ga = glo, gb = ghi;
    double best_t = std::abs(ga) < std::abs(gb) ? ta : tb;
    double best_g = std::min(std::abs(ga), std::abs(gb));
    for (int it = 0; it < 6 && ga != gb && best_g != 0.0; ++it) {
      double tn = tb - gb * (tb - ta) / (gb - ga);
      tn = std::clamp(tn, 0.0, h);
      const double gn = g_at(tn);
      if (std::abs(gn) < best_g) {
        best_g = std::abs(gn);
        best_t = tn;
      }
      ta = tb;
      ga = gb;
      tb = tn;
      gb = gn;
      if (gn == 0.0) break;
    }
    return {which, best_t, st.eval_within(y0, best_t, p.abs_tol, p.rel_tol)};
  }
};

// Implicit trapezoid marcher in the height variable for the stiff tail
// z -> 0, where the relaxation rate of theta grows like 1/z^2 and explicit
// steps collapse.  Marches theta(z) with Newton, recovers s and x by
// Simpson quadrature of 1/sin(theta) and cot(theta).
void run_tail(OrbitBuilder& ob, double tau, Y y) {
  const OdeParams& p = ob.p;
  const double a = p.a;
  const double dirsgn = ob.st.dirsgn;

  auto F = [&](double z, double th) {
    return -(2.0 / (z * z)) * (a * std::sin(th) + z * std::cos(th)) / std::sin(th);
  };
  // dF/dtheta collapses to 2/(z sin^2 theta); the a-terms cancel.
  auto Fth = [&](double z, double th) {
    const double sth = std::sin(th);
    return 2.0 / (z * sth * sth);
  };
  // One implicit trapezoid step for theta from (z0,th0) to z0-h.  The
  // residual g is monotone in theta and runs from -inf to +inf on the
  // branch (k pi, (k+1) pi) containing th0, so the root there is unique;
  // Newton is safeguarded by that bracket to keep cot(theta) from pulling
  // iterates across the singularity into another branch.
  auto trap = [&](double z0, double th0, double h) {
    const double z1 = z0 - h;
    const double f0 = F(z0, th0);
    double lo = std::floor(th0 / kPi) * kPi;
    double hi = lo + kPi;
    double th = th0 - h * f0;  // explicit Euler predictor
    if (!(th > lo && th < hi)) th = th0;
    for (int it = 0; it < 100; ++it) {
      const double g = th - th0 + 0.5 * h * (f0 + F(z1, th));
      const double gp = 1.0 + 0.5 * h * Fth(z1, th);
      if (!std::isfinite(g) || !std::isfinite(gp)) {
        th = 0.5 * (lo + hi);
        continue;
      }
      if (g < 0.0) lo = std::max(lo, th);
      else hi = std::min(hi, th);
      double tn = th - g / gp;
      if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
      const double d = tn - th;
      th = tn;
      if (std::abs(d) < 1e-15 * (1.0 + std::abs(th))) break;
    }
    return th;
  };

  double z = y[1], th = y[2], x = y[0];
  double s = ob.s0 + dirsgn * tau;  // physical arc length
  std::size_t k_out =
      static_cast<std::size_t>(std::floor(tau / p.output_step + 1e-9)) + 1;

  for (std::size_t steps = 0;; ++steps) {
    if (steps > 10'000'000) {
      throw IntegrationError("tail marcher: step budget exhausted",
                             CurveState{s, x, z, th});
    }
    const double sth = std::sin(th);
    if (std::abs(sth) < 1e-300) {
      throw IntegrationError("tail marcher: sin(theta) vanished",
                             CurveState{s, x, z, th});
    }
    // Truncation error of the trapezoid step at h <= output_step *
    // |sin theta| is far below the working tolerance on the slow
    // manifold, so the step size is set geometrically, not adaptively.
    double h = std::min({0.25 * z, z - p.z_min, p.output_step * std::abs(sth)});
    const double s_left = p.s_max - std::abs(s);
    bool budget_step = false;
    if (s_left * std::abs(sth) <= h) {
      h = s_left * std::abs(sth);
      budget_step = true;
    }
    if (z - p.z_min <= 1e-14 * z) h = z - p.z_min;

    // Plain trapezoid: A-stable, so the hand-off transient stays bounded.
    // (Richardson extrapolation of the doubled step amplifies stiff modes
    // by up to 5/3 per step and is useless here.)
    const double z1 = z - h;
    const double th1 = trap(z, th, h);
    const double th_mid = trap(z, th, 0.5 * h);
    // Simpson quadrature over the step (dz = -h) for s and x.
    const double inv0 = 1.0 / std::sin(th);
    const double invm = 1.0 / std::sin(th_mid);
    const double inv1 = 1.0 / std::sin(th1);
    const double s1 = s - (h / 6.0) * (inv0 + 4.0 * invm + inv1);
    const double x1 = x - (h / 6.0) * (std::cos(th) * inv0 +
                                       4.0 * std::cos(th_mid) * invm +
                                       std::cos(th1) * inv1);

    // Interior events are not expected on the tail, but scan anyway.
    for (int which = 0; which < 3; ++which) {
      auto ef = [&](double zz, double tt) {
        switch (which) {
          case 0: return tt;
          case 1: return tt - kPi / 2.0;
          default: return a * std::sin(tt) + zz * std::cos(tt);
        }
      };
      const double g0 = ef(z, th), g1 = ef(z1, th1);
      if (g0 == 0.0 || ksign(g0) * ksign(g1) >= 0) continue;
      // Near the slow manifold the event functions sit at the round-off
      // floor of theta; sign flips there are noise, not crossings.
      if (std::max(std::abs(g0), std::abs(g1)) < 1e-11) continue;
      double lo = 0.0, hi = h, glo = g0;
      double ze = z1, te = th1;
      while (hi - lo > 1e-15 * z) {
        const double mid = 0.5 * (lo + hi);
        const double tm = trap(z, th, mid);
        const double gm = ef(z - mid, tm);
        if (ksign(gm) == ksign(glo)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
        ze = z - mid;
        te = tm;
      }
      const double frac = (z - ze) / h;
      const double se = s + frac * (s1 - s);
      const double xe = x + frac * (x1 - x);
      const double taue = std::abs(se - ob.s0);
      ob.push_event(OrbitBuilder::kind_of(which), taue, Y{xe, ze, te});
    }

    // Output-grid samples inside the step, cubic Hermite in arc length.
    const double tau_prev = std::abs(s - ob.s0);
    const double tau_here = std::abs(s1 - ob.s0);
    const double dtau = tau_here - tau_prev;
    if (dtau > 0.0) {
      const CurveState st0{s, x, z, th};
      const CurveState st1{s1, x1, z1, th1};
      const double m0 = dirsgn * theta_rate(st0, a);
      const double m1 = dirsgn * theta_rate(st1, a);
      while (static_cast<double>(k_out) * p.output_step <= tau_here + 1e-12) {
        const double ts = static_cast<double>(k_out) * p.output_step;
        ++k_out;
        if (ts <= tau_prev + 1e-15) continue;
        const double u = std::min((ts - tau_prev) / dtau, 1.0);
        const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        const double h10 = u * (1.0 - u) * (1.0 - u);
        const double h01 = u * u * (3.0 - 2.0 * u);
        const double h11 = u * u * (u - 1.0);
        auto hermite = [&](double p0, double d0, double p1, double d1) {
          return h00 * p0 + h10 * dtau * d0 + h01 * p1 + h11 * dtau * d1;
        };
        ob.push_sample(ts,
                       Y{hermite(x, dirsgn * std::cos(th), x1, dirsgn * std::cos(th1)),
                         hermite(z, dirsgn * std::sin(th), z1, dirsgn * std::sin(th1)),
                         hermite(th, m0, th1, m1)});
      }
    }

    z = z1;
    th = th1;
    s = s1;
    x = x1;

    if (z <= p.z_min * (1.0 + 1e-12)) {
      ob.push_sample(tau_here, Y{x, z, th});
      ob.push_event(EventKind::HeightCutoff, tau_here, Y{x, z, th});
      ob.termination = EventKind::HeightCutoff;
      return;
    }
    if (budget_step || std::abs(s) >= p.s_max * (1.0 - 1e-14)) {
      ob.push_sample(tau_here, Y{x, z, th});
      ob.push_event(EventKind::Budget, tau_here, Y{x, z, th});
      ob.termination = EventKind::Budget;
      return;
    }
  }
}

}  // namespace

IntegrationResult integrate_orbit(const CurveState& initial, const OdeParams& params,
                                  Direction dir) {
  params.validate();
  if (!(initial.z > params.z_min)) {
    throw std::domain_error("integrate_orbit: initial z must exceed z_min");
  }
  const double dirsgn = (dir == Direction::Forward) ? 1.0 : -1.0;
  OrbitBuilder ob{params, Stepper{params.a, dirsgn}, initial.s, {}, {}};

  Y y{initial.x, initial.z, initial.theta};
  double tau = 0.0;
  ob.push_sample(0.0, y);

  const double tau_max = params.s_max - std::abs(initial.s);
  if (tau_max <= 0.0) {
    ob.push_event(EventKind::Budget, 0.0, y);
    ob.termination = EventKind::Budget;
  } else {
    double h = std::min(params.output_step, 1e-3);
    std::size_t k_out = 1;
    bool done = false;
    for (std::size_t attempts = 0; !done; ++attempts) {
      if (attempts > 50'000'000) {
        throw IntegrationError("integrate_orbit: step budget exhausted",
                               ob.to_state(tau, y));
      }
      bool budget_step = false;
      if (h >= tau_max - tau) {
        h = tau_max - tau;
        budget_step = true;
      }
      Y y1;
      double err;
      const bool ok = ob.st.try_step(y, h, params.abs_tol, params.rel_tol, y1, err);
      if (!ok || err > 1.0) {
        const double fac = ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.5;
        h *= fac;
        if (h < kMinStep) {
          throw IntegrationError("integrate_orbit: step-size underflow",
                                 ob.to_state(tau, y));
        }
        continue;
      }

      // Scan for sign-change events inside the accepted step.
      std::vector<OrbitBuilder::Located> found;
      for (int which = 0; which < 4; ++which) {
        const double g0 = ob.evf(which, y);
        const double g1 = ob.evf(which, y1);
        if (g0 == 0.0) continue;
        if (ksign(g0) * ksign(g1) < 0 || g1 == 0.0) {
          found.push_back(ob.locate(which, y, h, g0, g1));
        }
      }
      std::sort(found.begin(), found.end(),
                [](const auto& a, const auto& b) { return a.t < b.t; });
      double t_end = h;
      const OrbitBuilder::Located* cutoff = nullptr;
      for (const auto& ev : found) {
        if (ev.which == 3) {
          cutoff = &ev;
          t_end = ev.t;
          break;
        }
      }

      // Output-grid samples inside (tau, tau + t_end].
      while (static_cast<double>(k_out) * params.output_step <= tau + t_end + 1e-12) {
        const double ts = static_cast<double>(k_out) * params.output_step;
        ++k_out;
        if (ts <= tau + 1e-15) continue;
        if (!cutoff && std::abs(ts - (tau + h)) <= 1e-12) {
          ob.push_sample(tau + h, y1);
        } else if (ts <= tau + t_end) {
          ob.push_sample(ts, ob.st.eval_within(y, ts - tau, params.abs_tol,
                                               params.rel_tol));
        }
      }

      for (const auto& ev : found) {
        if (ev.t > t_end) break;
        ob.push_event(OrbitBuilder::kind_of(ev.which), tau + ev.t, ev.y);
        if (&ev == cutoff) break;
      }

      if (cutoff) {
        ob.push_sample(tau + cutoff->t, cutoff->y);
        ob.termination = EventKind::HeightCutoff;
        done = true;
        break;
      }

      tau += h;
      y = y1;
      if (budget_step || tau >= tau_max - 1e-15) {
        ob.push_sample(tau, y);
        ob.push_event(EventKind::Budget, tau, y);
        ob.termination = EventKind::Budget;
        break;
      }
      h = std::min(params.output_step,
                   h * std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0));

      // Hand off to the implicit tail marcher once the orbit is low and
      // heading monotonically down; below this height the explicit step
      // size collapses like z^2.
      if (params.a != 0.0 && params.switch_height > 0.0 &&
          y[1] <= params.switch_height && y[1] > params.z_min) {
        const double sth = std::sin(y[2]);
        const double down = dirsgn * sth;
        if (down < 0.0 &&
            std::abs(sth) >= 0.2 * y[1] / std::max(1.0, std::abs(params.a))) {
          run_tail(ob, tau, y);
          done = true;
        }
      }
    }
  }

  IntegrationResult res;
  res.samples = std::move(ob.samples);
  res.events = std::move(ob.events);
  res.termination = ob.termination;
  if (dir == Direction::Backward) {
    std::reverse(res.samples.begin(), res.samples.end());
    std::reverse(res.events.begin(), res.events.end());
  }
  return res;
}

}  // namespace grim
