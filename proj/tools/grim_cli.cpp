// grim: construct, classify and verify translating solitons of mean
// curvature flow in the upper half-space model, driven by the horizontal
// Killing field a d/dx + b d/dy.
//
// Subcommands: trace, reaper, minimal, mesh, portrait, sweep.
// Exit codes: 0 success, 1 verification failure, 2 usage/validation
// error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grim/curve.hpp"
#include "grim/io.hpp"
#include "grim/phase_plane.hpp"
#include "grim/surface.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace grim;

namespace {

struct CommonOpts {
  double a = 1.0;
  double b = 0.0;
  double z_min = 1e-3;
  double s_max = 100.0;
  double tol = 1e-10;
  double output_step = 0.01;
  double switch_height = 0.01;
  std::string out_dir = "out";
};

OdeParams ode_params(const CommonOpts& c) {
  OdeParams p;
  p.a = c.a;
  p.z_min = c.z_min;
  p.s_max = c.s_max;
  p.rel_tol = p.abs_tol = c.tol;
  p.output_step = c.output_step;
  p.switch_height = c.switch_height;
  p.validate();
  return p;
}

void announce(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

void emit_csv(const fs::path& p, const CsvTable& t) {
  write_csv(p, t);
  announce(p);
}

void emit_json(const fs::path& p, const json& j) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + p.string());
  out << j.dump(2) << "\n";
  announce(p);
}

// Overlays values from a JSON config onto options the user did not pass
// on the command line; flags always win.  Tracks consumed keys so unknown
// ones can be rejected.
struct Overlay {
  const CLI::App* cmd;
  const json& cfg;
  std::set<std::string>& seen;

  template <typename T>
  void operator()(const std::string& flag, const std::string& key, T& var) const {
    seen.insert(key);
    if (cfg.contains(key) && cmd->count(flag) == 0) {
      var = cfg.at(key).get<T>();
    }
  }
};

void apply_common(const Overlay& ov, CommonOpts& c) {
  ov("--a", "a", c.a);
  ov("--b", "b", c.b);
  ov("--z-min", "z_min", c.z_min);
  ov("--s-max", "s_max", c.s_max);
  ov("--tol", "tol", c.tol);
  ov("--output-step", "output_step", c.output_step);
  ov("--switch-height", "switch_height", c.switch_height);
  ov("--out-dir", "out_dir", c.out_dir);
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--a", c.a, "Killing parameter a");
  cmd->add_option("--b", c.b, "Killing parameter b");
  cmd->add_option("--z-min", c.z_min, "height cutoff");
  cmd->add_option("--s-max", c.s_max, "arc-length budget");
  cmd->add_option("--tol", c.tol, "integrator rel/abs tolerance");
  cmd->add_option("--output-step", c.output_step, "sample grid spacing in s");
  cmd->add_option("--switch-height", c.switch_height,
                  "hand-off height of the implicit tail marcher (0 disables)");
  cmd->add_option("--out-dir", c.out_dir, "output directory");
}

CsvTable orbit_table(const std::vector<CurveState>& samples, bool with_integral) {
  CsvTable t;
  t.header = {"s", "x", "z", "theta"};
  if (with_integral) t.header.push_back("first_integral");
  for (const auto& st : samples) {
    std::vector<double> row{st.s, st.x, st.z, st.theta};
    if (with_integral) row.push_back(first_integral_a0(st));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable event_table(const std::vector<OrbitEvent>& events) {
  CsvTable t;
  t.preamble = {"kind codes: 0 GammaCrossing, 1 ThetaZero, 2 ThetaHalfPi, "
                "3 HeightCutoff, 4 Budget"};
  t.header = {"kind", "s", "x", "z", "theta"};
  for (const auto& ev : events) {
    t.rows.push_back({static_cast<double>(static_cast<int>(ev.kind)), ev.state.s,
                      ev.state.x, ev.state.z, ev.state.theta});
  }
  return t;
}

CsvTable curve_table(const GeneratingCurve& c) {
  CsvTable t;
  t.header = {"s", "x", "z", "theta", "theta_rate"};
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    const auto& st = c.samples[i];
    t.rows.push_back({st.s, st.x, st.z, st.theta, c.theta_rate[i]});
  }
  return t;
}

SvgPolyline curve_polyline(const GeneratingCurve& c, const std::string& color) {
  SvgPolyline pl;
  pl.color = color;
  for (const auto& st : c.samples) pl.points.emplace_back(st.x, st.z);
  return pl;
}

struct Verdict {
  bool ok = true;
  void check(bool pass, const std::string& what) {
    if (!pass) {
      ok = false;
      std::cout << "verification failed: " << what << "\n";
    }
  }
};

// ---------------------------------------------------------------- trace

int run_trace(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
              CommonOpts& c, double& z0) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--z0", "z0", z0);
  const OdeParams p = ode_params(c);
  if (!(z0 > p.z_min)) throw std::domain_error("trace: z0 must exceed z_min");

  const CurveState apex{0.0, 0.0, z0, 0.0};
  const auto fwd = integrate_orbit(apex, p, Direction::Forward);
  const auto bwd = integrate_orbit(apex, p, Direction::Backward);

  std::vector<CurveState> samples = bwd.samples;
  samples.insert(samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
  std::vector<OrbitEvent> events = bwd.events;
  events.insert(events.end(), fwd.events.begin(), fwd.events.end());

  const fs::path dir = c.out_dir;
  emit_csv(dir / "trace_orbit.csv", orbit_table(samples, c.a == 0.0));
  emit_csv(dir / "trace_events.csv", event_table(events));

  json rep;
  rep["command"] = "trace";
  rep["z0"] = z0;
  rep["a"] = c.a;
  rep["z_min"] = p.z_min;
  rep["s_max"] = p.s_max;
  rep["tol"] = p.rel_tol;
  rep["forward_termination"] = to_string(fwd.termination);
  rep["backward_termination"] = to_string(bwd.termination);

  Verdict v;
  if (c.a != 0.0) {
    const OrbitReport orb = classify_orbit(fwd, bwd, z0);  // throws on failure
    rep["apex_height"] = orb.apex_height;
    rep["gamma_crossing_s"] = orb.gamma_crossing_s;
    rep["theta_halfpi_crossing_s"] = orb.theta_halfpi_crossing_s;
    rep["forward_asymptote"] = orb.forward_asymptote;
    rep["backward_asymptote"] = orb.backward_asymptote;
    rep["is_bigraph"] = orb.is_bigraph;
    v.check(orb.is_bigraph, "orbit is not a bi-graph");
  } else {
    double drift = 0.0;
    for (const auto& st : samples) {
      const double cc = std::cos(st.theta);
      if (cc * cc < 1e-4) continue;
      drift = std::max(drift, std::abs(first_integral_a0(st) - z0 * z0 * z0 * z0));
    }
    rep["apex_height"] = z0;
    rep["first_integral"] = z0 * z0 * z0 * z0;
    rep["first_integral_max_drift"] = drift;
    v.check(drift < 1e-6, "first-integral drift exceeds 1e-6");
  }
  rep["verified"] = v.ok;
  emit_json(dir / "trace_report.json", rep);
  return v.ok ? 0 : 1;
}

// ------------------------------------------------------- reaper/minimal

int run_reaper(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
               CommonOpts& c, double& z0, bool& svg) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--z0", "z0", z0);
  ov("--svg", "svg", svg);
  const OdeParams p = ode_params(c);
  const GeneratingCurve curve = build_reaper(z0, c.a, p);
  const BiGraph bg = to_bigraph(curve);

  const fs::path dir = c.out_dir;
  emit_csv(dir / "reaper_curve.csv", curve_table(curve));

  const auto& turn = curve.samples.at(*curve.turning_index);
  json rep;
  rep["command"] = "reaper";
  rep["z0"] = z0;
  rep["a"] = c.a;
  rep["family"] = to_string(curve.family);
  rep["apex_height"] = curve.apex_height;
  rep["turning_x"] = turn.x;
  rep["turning_z"] = turn.z;
  rep["lower_branch_points"] = bg.lower.size();
  rep["upper_branch_points"] = bg.upper.size();

  Verdict v;
  v.check(std::abs(curve.apex_height - z0) < 1e-10, "apex height drifted from z0");
  rep["verified"] = v.ok;
  emit_json(dir / "reaper_report.json", rep);

  if (svg) {
    SvgPlot plot;
    plot.x_label = "x";
    plot.y_label = "z";
    plot.polylines.push_back(curve_polyline(curve, "#1f77b4"));
    write_svg(dir / "reaper.svg", plot);
    announce(dir / "reaper.svg");
  }
  return v.ok ? 0 : 1;
}

int run_minimal(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
                CommonOpts& c, double& z0, bool& svg) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--z0", "z0", z0);
  ov("--svg", "svg", svg);
  c.a = 0.0;
  const OdeParams p = ode_params(c);
  const GeneratingCurve curve = build_minimal_reaper(z0, p);

  const fs::path dir = c.out_dir;
  emit_csv(dir / "minimal_curve.csv", curve_table(curve));

  const double span = minimal_x_span(curve);
  const double predicted = 2.0 * half_width(z0, 1e-10);
  json rep;
  rep["command"] = "minimal";
  rep["z0"] = z0;
  rep["family"] = to_string(curve.family);
  rep["apex_height"] = curve.apex_height;
  rep["x_span"] = span;
  rep["x_span_quadrature"] = predicted;

  Verdict v;
  v.check(std::abs(span - predicted) < 5e-3, "x-span disagrees with quadrature");
  rep["verified"] = v.ok;
  emit_json(dir / "minimal_report.json", rep);

  if (svg) {
    SvgPlot plot;
    plot.x_label = "x";
    plot.y_label = "z";
    plot.polylines.push_back(curve_polyline(curve, "#1f77b4"));
    write_svg(dir / "minimal.svg", plot);
    announce(dir / "minimal.svg");
  }
  return v.ok ? 0 : 1;
}

// ----------------------------------------------------------------- mesh

CsvTable residual_table(const SurfaceMesh& mesh, const ResidualReport& ra,
                        const ResidualReport& rf, const std::vector<double>& h_fd) {
  CsvTable t;
  t.header = {"s", "t", "x", "y", "z", "H_analytic", "H_fd",
              "residual_analytic", "residual_fd"};
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    for (std::size_t j = 0; j < mesh.nt; ++j) {
      const std::size_t k = mesh.index(i, j);
      const auto& vx = mesh.vertices[k];
      t.rows.push_back({mesh.s_values[i], mesh.t_values[j], vx.x, vx.y, vx.z,
                        mesh.curvature[k].H, h_fd[k], ra.per_vertex[k],
                        rf.per_vertex[k]});
    }
  }
  return t;
}

int run_mesh(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
             CommonOpts& c, std::string& family, double& z0, double& height,
             std::string& profile, std::size_t& ns, std::size_t& nt) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--family", "family", family);
  ov("--z0", "z0", z0);
  ov("--height", "height", height);
  ov("--profile", "profile", profile);
  ov("--ns", "ns", ns);
  ov("--nt", "nt", nt);
  if (ns < 4 || nt < 4) throw std::invalid_argument("mesh: ns and nt must be >= 4");

  const fs::path dir = c.out_dir;
  const KillingFieldParams k{c.a, c.b};
  SurfaceMesh mesh;
  GeneratingCurve curve;
  Verdict v;
  json rep;
  rep["command"] = "mesh";
  rep["family"] = family;

  if (family == "reaper" || family == "minimal") {
    const OdeParams p = ode_params(c);
    curve = family == "reaper" ? build_reaper(z0, c.a, p)
                               : build_minimal_reaper(z0, p);
    curve = resample_uniform(curve, ns);
    mesh = extrude_parabolic(curve, -1.0, 1.0, nt);
    rep["z0"] = z0;
    rep["a"] = c.a;
    rep["b"] = c.b;
  } else if (family == "horosphere") {
    if (!(height > 0.0)) throw std::invalid_argument("mesh: height must be positive");
    curve = horizontal_profile(height, 0.5, 2.0, ns);
    mesh = revolve_spherical(curve, nt);
    rep["height"] = height;
  } else if (family == "hemisphere") {
    curve = hemisphere_profile(0.3, 1.2, ns);
    mesh = revolve_spherical(curve, nt);
  } else if (family == "spherical") {
    if (profile == "circle") {
      curve = hemisphere_profile(0.3, 1.2, ns);
    } else if (profile == "horizontal") {
      curve = horizontal_profile(height > 0.0 ? height : 1.0, 0.5, 2.0, ns);
    } else {
      throw std::invalid_argument("mesh: --profile must be circle or horizontal");
    }
    curve = resample_uniform(curve, ns);
    mesh = revolve_spherical(curve, nt);
    rep["profile"] = profile;
  } else {
    throw std::invalid_argument(
        "mesh: --family must be reaper, minimal, horosphere, hemisphere or spherical");
  }

  const auto ra = soliton_residual(mesh, k, CurvatureSource::Analytic);
  const auto rf = soliton_residual(mesh, k, CurvatureSource::FiniteDifference);
  const auto h_fd = mesh_mean_curvature_fd(mesh);

  write_obj(dir / "mesh.obj", mesh);
  announce(dir / "mesh.obj");
  emit_csv(dir / "mesh_residual.csv", residual_table(mesh, ra, rf, h_fd));

  rep["ns"] = mesh.ns;
  rep["nt"] = mesh.nt;
  rep["residual_analytic_max"] = ra.max_abs;
  rep["residual_analytic_mean"] = ra.mean_abs;
  rep["residual_fd_max"] = rf.max_abs;
  rep["residual_fd_mean"] = rf.mean_abs;

  if (mesh.provenance == SurfaceProvenance::Spherical) {
    const auto fo = spherical_obstruction(curve, k);
    CsvTable t;
    t.header = {"s", "c0", "c1", "c2"};
    double c0_max = 0.0, c1_max = 0.0, c2_max = 0.0;
    for (std::size_t i = 0; i < fo.s.size(); ++i) {
      t.rows.push_back({fo.s[i], fo.c0[i], fo.c1[i], fo.c2[i]});
      c0_max = std::max(c0_max, std::abs(fo.c0[i]));
      c1_max = std::max(c1_max, std::abs(fo.c1[i]));
      c2_max = std::max(c2_max, std::abs(fo.c2[i]));
    }
    emit_csv(dir / "mesh_obstruction.csv", t);
    rep["obstruction_c0_max"] = c0_max;
    rep["obstruction_c1_max"] = c1_max;
    rep["obstruction_c2_max"] = c2_max;
  }

  if (family == "reaper" || family == "minimal") {
    v.check(ra.max_abs < 1e-8, "analytic soliton residual exceeds 1e-8");
  } else if (family == "horosphere") {
    double worst = 0.0;
    for (const auto& cd : mesh.curvature) worst = std::max(worst, std::abs(cd.H - 1.0));
    rep["H_deviation_from_1"] = worst;
    v.check(worst < 1e-10, "horosphere mean curvature deviates from 1");
  } else if (family == "hemisphere") {
    double worst = 0.0;
    for (const auto& cd : mesh.curvature) worst = std::max(worst, std::abs(cd.H));
    rep["H_deviation_from_0"] = worst;
    v.check(worst < 1e-10, "hemisphere mean curvature deviates from 0");
  }

  rep["verified"] = v.ok;
  emit_json(dir / "mesh_summary.json", rep);
  return v.ok ? 0 : 1;
}

// ------------------------------------------------------------- portrait

int run_portrait(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
                 CommonOpts& c, std::vector<double>& orbits, bool& no_orbits,
                 double& z_max) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--orbits", "orbits", orbits);
  ov("--no-orbits", "no_orbits", no_orbits);
  ov("--z-max", "z_max", z_max);
  if (no_orbits) orbits.clear();
  if (!(z_max > 0.0)) throw std::invalid_argument("portrait: z-max must be positive");
  const OdeParams p = ode_params(c);
  const fs::path dir = c.out_dir;
  constexpr double kPi = 3.14159265358979323846;

  // Gamma locus z = -tan(theta), two branches, clipped to z <= z_max.
  CsvTable gamma;
  gamma.header = {"branch", "theta", "z"};
  SvgPlot plot;
  plot.x_label = "theta";
  plot.y_label = "z";
  const std::size_t ng = 256;
  for (int branch = 0; branch < 2; ++branch) {
    const double lo = branch == 0 ? -kPi / 2.0 : kPi / 2.0;
    const double hi = branch == 0 ? 0.0 : kPi;
    SvgPolyline pl;
    pl.color = "#d62728";
    for (std::size_t i = 1; i < ng; ++i) {
      const double theta = lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(ng);
      const double z = gamma_curve(theta);
      if (!(z > 0.0) || z > z_max) continue;
      gamma.rows.push_back({static_cast<double>(branch), theta, z});
      pl.points.emplace_back(theta, z);
    }
    plot.polylines.push_back(std::move(pl));
  }
  emit_csv(dir / "portrait_gamma.csv", gamma);

  // Asymptotes of Gamma: theta = 0 and theta = pi/2.
  for (double theta : {0.0, kPi / 2.0}) {
    SvgPolyline pl;
    pl.color = "#7f7f7f";
    pl.width = 0.75;
    pl.points.emplace_back(theta, 0.0);
    pl.points.emplace_back(theta, z_max);
    plot.polylines.push_back(std::move(pl));
  }

  // Region tags on a lattice.
  CsvTable regions;
  regions.header = {"z", "theta", "dz_sign", "dtheta_sign"};
  const std::size_t nz = 24, nth = 48;
  for (std::size_t i = 1; i <= nz; ++i) {
    const double z = z_max * static_cast<double>(i) / static_cast<double>(nz);
    for (std::size_t j = 0; j < nth; ++j) {
      const double theta = -kPi / 2.0 + 1.5 * kPi * (static_cast<double>(j) + 0.5) /
                                             static_cast<double>(nth);
      const RegionTag tag = classify_region({z, theta});
      regions.rows.push_back({z, theta, static_cast<double>(tag.dz_sign),
                              static_cast<double>(tag.dtheta_sign)});
    }
  }
  emit_csv(dir / "portrait_regions.csv", regions);

  Verdict v;
  for (double z0 : orbits) {
    if (!(z0 > p.z_min)) throw std::domain_error("portrait: orbit z0 must exceed z_min");
    const CurveState apex{0.0, 0.0, z0, 0.0};
    const auto fwd = integrate_orbit(apex, p, Direction::Forward);
    const auto bwd = integrate_orbit(apex, p, Direction::Backward);
    std::vector<CurveState> samples = bwd.samples;
    samples.insert(samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
    const fs::path orbit_path =
        dir / ("portrait_orbit_z0_" + format_double(z0) + ".csv");
    emit_csv(orbit_path, orbit_table(samples, c.a == 0.0));
    SvgPolyline pl;
    pl.color = "#1f77b4";
    for (const auto& st : samples) {
      if (st.z <= z_max) pl.points.emplace_back(st.theta, st.z);
    }
    plot.polylines.push_back(std::move(pl));
  }

  write_svg(dir / "portrait.svg", plot);
  announce(dir / "portrait.svg");
  return v.ok ? 0 : 1;
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
  double z0;
  double theta_fwd;
  double theta_bwd;
  double turning_x;
  double half_w;
  bool bigraph;
};

SweepRow sweep_one(double z0, double a, const OdeParams& p) {
  SweepRow row{};
  row.z0 = z0;
  const double nan = std::nan("");
  if (a != 0.0) {
    const GeneratingCurve curve = build_reaper(z0, a, p);
    row.theta_fwd = curve.samples.back().theta;
    row.theta_bwd = curve.samples.front().theta;
    row.turning_x = curve.samples.at(*curve.turning_index).x;
    row.half_w = nan;
    const BiGraph bg = to_bigraph(curve);
    row.bigraph = !bg.lower.empty() && !bg.upper.empty();
  } else {
    const GeneratingCurve curve = build_minimal_reaper(z0, p);
    row.theta_fwd = curve.samples.back().theta;
    row.theta_bwd = curve.samples.front().theta;
    row.turning_x = nan;
    row.half_w = minimal_x_span(curve) / 2.0;
    row.bigraph = false;
  }
  return row;
}

int run_sweep(const CLI::App* cmd, const json& cfg, std::set<std::string>& seen,
              CommonOpts& c, double& z0_from, double& z0_to, std::size_t& count) {
  Overlay ov{cmd, cfg, seen};
  apply_common(ov, c);
  ov("--z0-from", "z0_from", z0_from);
  ov("--z0-to", "z0_to", z0_to);
  ov("--count", "count", count);
  if (!(z0_to > z0_from)) {
    throw std::invalid_argument("sweep: z0 range bounds are reversed or equal");
  }
  if (count < 2) throw std::invalid_argument("sweep: count must be at least 2");
  const OdeParams p = ode_params(c);
  if (!(z0_from > p.z_min)) throw std::domain_error("sweep: z0-from must exceed z_min");

  std::vector<double> zs(count);
  for (std::size_t i = 0; i < count; ++i) {
    zs[i] = z0_from + (z0_to - z0_from) * static_cast<double>(i) /
                          static_cast<double>(count - 1);
  }

  // Fan out per z0; gather preserves input order.
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(count);
  for (double z0 : zs) {
    futures.push_back(std::async(std::launch::async, sweep_one, z0, c.a, p));
  }
  std::vector<SweepRow> rows;
  rows.reserve(count);
  for (auto& f : futures) rows.push_back(f.get());

  CsvTable t;
  t.header = {"z0", "theta_forward", "theta_backward", "turning_x", "half_width"};
  for (const auto& r : rows) {
    t.rows.push_back({r.z0, r.theta_fwd, r.theta_bwd, r.turning_x, r.half_w});
  }
  const fs::path dir = c.out_dir;
  emit_csv(dir / "sweep.csv", t);

  json rep;
  rep["command"] = "sweep";
  rep["a"] = c.a;
  rep["z0_from"] = z0_from;
  rep["z0_to"] = z0_to;
  rep["count"] = count;

  Verdict v;
  if (c.a == 0.0) {
    // Least-squares slope of half-width against z0; exact value is w(1).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
      sx += r.z0;
      sy += r.half_w;
      sxx += r.z0 * r.z0;
      sxy += r.z0 * r.half_w;
    }
    const double n = static_cast<double>(rows.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double w1 = half_width(1.0, 1e-12);
    rep["half_width_slope"] = slope;
    rep["w1_quadrature"] = w1;
    v.check(std::abs(slope - w1) < 1e-6, "half-width slope deviates from w(1)");
  } else {
    bool all = true;
    for (const auto& r : rows) all = all && r.bigraph;
    rep["all_bigraph"] = all;
    v.check(all, "a sweep row failed bi-graph classification");
  }
  rep["verified"] = v.ok;
  emit_json(dir / "sweep_summary.json", rep);
  return v.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translating solitons of mean curvature flow in H^3: "
               "orbit tracing, curve and mesh construction, verification"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file; command-line flags override its values");

  CommonOpts c;
  double z0 = 2.0, height = 1.0, z0_from = 0.5, z0_to = 4.0, z_max = 4.0;
  std::size_t ns = 129, nt = 17, count = 8;
  bool svg = false, no_orbits = false;
  std::string family = "reaper", profile = "circle";
  std::vector<double> orbits{2.0};

  CLI::App* trace = app.add_subcommand("trace", "integrate and classify one orbit");
  trace->add_option("--z0", z0, "apex height");
  add_common(trace, c);

  CLI::App* reaper = app.add_subcommand("reaper", "generating curve of G(z0), a != 0");
  reaper->add_option("--z0", z0, "apex height");
  reaper->add_flag("--svg", svg, "also render an SVG polyline");
  add_common(reaper, c);

  CLI::App* minimal =
      app.add_subcommand("minimal", "generating curve of the minimal family G0(z0)");
  minimal->add_option("--z0", z0, "apex height");
  minimal->add_flag("--svg", svg, "also render an SVG polyline");
  add_common(minimal, c);

  CLI::App* mesh = app.add_subcommand("mesh", "surface mesh with residual report");
  mesh->add_option("--family", family,
                   "reaper | minimal | horosphere | hemisphere | spherical");
  mesh->add_option("--z0", z0, "apex height (reaper/minimal)");
  mesh->add_option("--height", height, "horosphere height");
  mesh->add_option("--profile", profile, "spherical profile: circle | horizontal");
  mesh->add_option("--ns", ns, "samples along the profile");
  mesh->add_option("--nt", nt, "samples along the rotation/ruling");
  add_common(mesh, c);

  CLI::App* portrait = app.add_subcommand("portrait", "phase portrait of the system");
  portrait->add_option("--orbits", orbits, "apex heights of orbits to overlay");
  portrait->add_flag("--no-orbits", no_orbits, "emit Gamma and regions only");
  portrait->add_option("--z-max", z_max, "height clip of the portrait");
  add_common(portrait, c);

  CLI::App* sweep = app.add_subcommand("sweep", "sweep z0 over a range");
  sweep->add_option("--z0-from", z0_from, "first apex height");
  sweep->add_option("--z0-to", z0_to, "last apex height");
  sweep->add_option("--count", count, "number of z0 values");
  add_common(sweep, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config file " << config_path << "\n";
        return 2;
      }
      cfg = json::parse(in);
      if (!cfg.is_object()) {
        std::cerr << "error: config file must hold a JSON object\n";
        return 2;
      }
    }
    std::set<std::string> seen;
    int rc;
    if (trace->parsed()) {
      rc = run_trace(trace, cfg, seen, c, z0);
    } else if (reaper->parsed()) {
      rc = run_reaper(reaper, cfg, seen, c, z0, svg);
    } else if (minimal->parsed()) {
      rc = run_minimal(minimal, cfg, seen, c, z0, svg);
    } else if (mesh->parsed()) {
      rc = run_mesh(mesh, cfg, seen, c, family, z0, height, profile, ns, nt);
    } else if (portrait->parsed()) {
      rc = run_portrait(portrait, cfg, seen, c, orbits, no_orbits, z_max);
    } else {
      rc = run_sweep(sweep, cfg, seen, c, z0_from, z0_to, count);
    }
    for (const auto& [key, value] : cfg.items()) {
      (void)value;
      if (!seen.count(key)) {
        std::cerr << "error: unknown config key '" << key << "'\n";
        return 2;
      }
    }
    return rc;
  } catch (const ClassificationError& e) {
    std::cerr << "classification failure: " << e.what() << "\n";
    return 1;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << " (last state s=" <<
        e.last_state.s << ", z=" << e.last_state.z << ")\n";
    return 3;
  } catch (const SingularMetricError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
