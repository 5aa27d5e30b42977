#include "grim/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace grim {

namespace {

constexpr double kPi = std::numbers::pi;

void require_uniform(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) throw std::invalid_argument(std::string(what) + ": too few values");
  const double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i] - v[i - 1] - h) > 1e-9 * std::max(std::abs(h), 1.0)) {
      throw std::invalid_argument(std::string(what) +
                                  ": finite differences need a uniform grid");
    }
  }
}

// Second-order first derivative along one grid line.
template <typename Get>
Vec3 d1(Get&& f, std::size_t i, std::size_t n, double h) {
  Vec3 r;
  for (int c = 0; c < 3; ++c) {
    if (i == 0) {
      r[c] = (-3.0 * f(0)[c] + 4.0 * f(1)[c] - f(2)[c]) / (2.0 * h);
    } else if (i == n - 1) {
      r[c] = (3.0 * f(n - 1)[c] - 4.0 * f(n - 2)[c] + f(n - 3)[c]) / (2.0 * h);
    } else {
      r[c] = (f(i + 1)[c] - f(i - 1)[c]) / (2.0 * h);
    }
  }
  return r;
}

// Second-order second derivative along one grid line.
template <typename Get>
Vec3 d2(Get&& f, std::size_t i, std::size_t n, double h) {
  Vec3 r;
  const double h2 = h * h;
  for (int c = 0; c < 3; ++c) {
    if (i == 0) {
      r[c] = (2.0 * f(0)[c] - 5.0 * f(1)[c] + 4.0 * f(2)[c] - f(3)[c]) / h2;
    } else if (i == n - 1) {
      r[c] = (2.0 * f(n - 1)[c] - 5.0 * f(n - 2)[c] + 4.0 * f(n - 3)[c] -
              f(n - 4)[c]) / h2;
    } else {
      r[c] = (f(i + 1)[c] - 2.0 * f(i)[c] + f(i - 1)[c]) / h2;
    }
  }
  return r;
}

Vec3 as_vec(const HalfSpacePoint& p) { return {p.x, p.y, p.z}; }

double pairwise_sum_impl(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

ResidualReport make_report(std::vector<double> per_vertex, double spacing) {
  ResidualReport rep;
  rep.per_vertex = std::move(per_vertex);
  rep.grid_spacing = spacing;
  std::vector<double> mags(rep.per_vertex.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(rep.per_vertex[i]);
  rep.max_abs = 0.0;
  for (double m : mags) rep.max_abs = std::max(rep.max_abs, m);
  rep.mean_abs = mags.empty() ? 0.0
                              : pairwise_sum_impl(mags.data(), mags.size()) /
                                    static_cast<double>(mags.size());
  return rep;
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum_impl(v.data(), v.size());
}

SurfaceMesh extrude_parabolic(const GeneratingCurve& curve, double t_lo,
                              double t_hi, std::size_t nt) {
  if (curve.samples.size() < 2 || nt < 2 || !(t_hi > t_lo)) {
    throw std::invalid_argument("extrude_parabolic: invalid curve or ruling range");
  }
  SurfaceMesh mesh;
  mesh.provenance = SurfaceProvenance::Parabolic;
  mesh.ns = curve.samples.size();
  mesh.nt = nt;
  mesh.s_values.reserve(mesh.ns);
  for (const auto& st : curve.samples) mesh.s_values.push_back(st.s);
  mesh.t_values.reserve(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    mesh.t_values.push_back(t_lo + (t_hi - t_lo) * static_cast<double>(j) /
                                       static_cast<double>(nt - 1));
  }
  mesh.vertices.reserve(mesh.ns * nt);
  mesh.curvature.reserve(mesh.ns * nt);
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    const auto& st = curve.samples[i];
    const double ct = std::cos(st.theta);
    const double sn = std::sin(st.theta);
    const double H_e = 0.5 * curve.theta_rate[i];
    CurvatureData cd;
    cd.H_e = H_e;
    cd.N_e = {-sn, 0.0, ct};
    cd.H = st.z * H_e + ct;
    for (std::size_t j = 0; j < nt; ++j) {
      mesh.vertices.push_back({st.x, mesh.t_values[j], st.z});
      mesh.curvature.push_back(cd);
    }
  }
  return mesh;
}

SurfaceMesh revolve_spherical(const GeneratingCurve& curve, std::size_t nt) {
  if (curve.samples.size() < 2 || nt < 3) {
    throw std::invalid_argument("revolve_spherical: invalid curve or nt");
  }
  for (const auto& st : curve.samples) {
    if (!(st.x > 0.0)) {
      throw std::domain_error(
          "revolve_spherical: profile touches the rotation axis x = 0");
    }
  }
  SurfaceMesh mesh;
  mesh.provenance = SurfaceProvenance::Spherical;
  mesh.ns = curve.samples.size();
  mesh.nt = nt;
  mesh.s_values.reserve(mesh.ns);
  for (const auto& st : curve.samples) mesh.s_values.push_back(st.s);
  mesh.t_values.reserve(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    mesh.t_values.push_back(2.0 * kPi * static_cast<double>(j) /
                            static_cast<double>(nt));
  }
  mesh.vertices.reserve(mesh.ns * nt);
  mesh.curvature.reserve(mesh.ns * nt);
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    const auto& st = curve.samples[i];
    const double ct = std::cos(st.theta);
    const double sn = std::sin(st.theta);
    const double H_e = 0.5 * (curve.theta_rate[i] + sn / st.x);
    for (std::size_t j = 0; j < nt; ++j) {
      const double cj = std::cos(mesh.t_values[j]);
      const double sj = std::sin(mesh.t_values[j]);
      mesh.vertices.push_back({st.x * cj, st.x * sj, st.z});
      CurvatureData cd;
      cd.H_e = H_e;
      cd.N_e = {-sn * cj, -sn * sj, ct};
      cd.H = st.z * H_e + ct;
      mesh.curvature.push_back(cd);
    }
  }
  return mesh;
}

FourierObstruction spherical_obstruction(const GeneratingCurve& curve,
                                         const KillingFieldParams& k) {
  FourierObstruction fo;
  fo.s.reserve(curve.samples.size());
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& st = curve.samples[i];
    if (!(st.x > 0.0)) {
      throw std::domain_error("spherical_obstruction: profile requires x > 0");
    }
    const double sn = std::sin(st.theta);
    const double ct = std::cos(st.theta);
    fo.s.push_back(st.s);
    fo.c0.push_back(0.5 * st.z * (curve.theta_rate[i] + sn / st.x) + ct);
    fo.c1.push_back(k.a * sn / st.z);
    fo.c2.push_back(k.b * sn / st.z);
  }
  return fo;
}

ConeCheckReport hyperbolic_cone_check(const std::vector<std::array<double, 2>>& profile,
                                      const KillingFieldParams& k, double ds) {
  if (profile.size() < 4) {
    throw std::invalid_argument("hyperbolic_cone_check: need at least 4 samples");
  }
  if (!(ds > 0.0)) {
    throw std::invalid_argument("hyperbolic_cone_check: ds must be positive");
  }
  const std::size_t n = profile.size();
  auto alpha = [&](std::size_t i) {
    return Vec3{profile[i][0], profile[i][1], 1.0};
  };
  ConeCheckReport rep;
  const Vec3 xi{k.a, k.b, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = alpha(i);
    const Vec3 ap = d1(alpha, i, n, ds);
    const Vec3 app = d2(alpha, i, n, ds);
    const double a2 = dot_e(a, a);
    const double denom = a2 - dot_e(ap, a) * dot_e(ap, a);
    if (!(denom > 0.0)) {
      throw std::domain_error("hyperbolic_cone_check: degenerate profile sample");
    }
    const Vec3 w = cross_e(ap, a);
    const double L = a2 * dot_e(w, app) / (2.0 * denom) + w[2];
    const double R = dot_e(w, xi);
    rep.s.push_back(static_cast<double>(i) * ds);
    rep.L.push_back(L);
    rep.R.push_back(R);
    rep.max_abs_L = std::max(rep.max_abs_L, std::abs(L));
    rep.max_abs_R = std::max(rep.max_abs_R, std::abs(R));
  }
  return rep;
}

std::vector<CurvatureData> curvature_fd(const SurfaceMesh& mesh) {
  if (mesh.ns < 4 || mesh.nt < 4) {
    throw std::invalid_argument("curvature_fd: need at least a 4x4 grid");
  }
  require_uniform(mesh.s_values, "curvature_fd (s)");
  require_uniform(mesh.t_values, "curvature_fd (t)");
  const double hs = (mesh.s_values.back() - mesh.s_values.front()) /
                    static_cast<double>(mesh.ns - 1);
  const double ht = (mesh.t_values.back() - mesh.t_values.front()) /
                    static_cast<double>(mesh.nt - 1);

  // First pass: Psi_t everywhere, so the mixed derivative can reuse the
  // same second-order stencils.
  std::vector<Vec3> psi_t(mesh.ns * mesh.nt);
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    auto row = [&](std::size_t j) { return as_vec(mesh.vertices[mesh.index(i, j)]); };
    for (std::size_t j = 0; j < mesh.nt; ++j) {
      psi_t[mesh.index(i, j)] = d1(row, j, mesh.nt, ht);
    }
  }

  std::vector<CurvatureData> out(mesh.ns * mesh.nt);
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    for (std::size_t j = 0; j < mesh.nt; ++j) {
      auto col = [&](std::size_t ii) { return as_vec(mesh.vertices[mesh.index(ii, j)]); };
      auto row = [&](std::size_t jj) { return as_vec(mesh.vertices[mesh.index(i, jj)]); };
      auto tcol = [&](std::size_t ii) { return psi_t[mesh.index(ii, j)]; };
      const Vec3 ps = d1(col, i, mesh.ns, hs);
      const Vec3 pt = psi_t[mesh.index(i, j)];
      const Vec3 pss = d2(col, i, mesh.ns, hs);
      const Vec3 ptt = d2(row, j, mesh.nt, ht);
      const Vec3 pst = d1(tcol, i, mesh.ns, hs);

      const double E = dot_e(ps, ps);
      const double F = dot_e(ps, pt);
      const double G = dot_e(pt, pt);
      const double W2 = E * G - F * F;
      if (!(W2 > 1e-14 * std::max(E * G, 1e-300))) {
        throw SingularMetricError("curvature_fd: degenerate first fundamental form at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
      }
      const double W = std::sqrt(W2);
      Vec3 nrm = cross_e(ps, pt);
      for (auto& c : nrm) c /= W;
      const double L = dot_e(pss, nrm);
      const double M = dot_e(pst, nrm);
      const double Nf = dot_e(ptt, nrm);
      const double H_e = (E * Nf - 2.0 * F * M + G * L) / (2.0 * W2);
      const double z = mesh.vertices[mesh.index(i, j)].z;
      out[mesh.index(i, j)] = {H_e, nrm, z * H_e + nrm[2]};
    }
  }
  return out;
}

std::vector<double> mesh_mean_curvature_fd(const SurfaceMesh& mesh) {
  const auto cd = curvature_fd(mesh);
  std::vector<double> h(cd.size());
  for (std::size_t i = 0; i < cd.size(); ++i) h[i] = cd[i].H;
  return h;
}

ResidualReport soliton_residual(const SurfaceMesh& mesh, const KillingFieldParams& k,
                                CurvatureSource source) {
  const std::vector<CurvatureData>* data = &mesh.curvature;
  std::vector<CurvatureData> fd;
  if (source == CurvatureSource::FiniteDifference) {
    fd = curvature_fd(mesh);
    data = &fd;
  }
  std::vector<double> res(mesh.vertices.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    const auto& cd = (*data)[i];
    const double z = mesh.vertices[i].z;
    res[i] = cd.H - (k.a * cd.N_e[0] + k.b * cd.N_e[1]) / z;
  }
  const double hs = mesh.ns > 1 ? (mesh.s_values.back() - mesh.s_values.front()) /
                                      static_cast<double>(mesh.ns - 1)
                                : 0.0;
  return make_report(std::move(res), hs);
}

ResidualReport graph_pde_residual(const std::vector<double>& u, std::size_t nx,
                                  std::size_t ny, const KillingFieldParams& k,
                                  double h) {
  if (nx < 3 || ny < 3 || u.size() != nx * ny) {
    throw std::invalid_argument("graph_pde_residual: grid must be at least 3x3");
  }
  if (!(h > 0.0)) throw std::invalid_argument("graph_pde_residual: h must be positive");
  for (double v : u) {
    if (!(v > 0.0)) throw std::domain_error("graph_pde_residual: u must be positive");
  }
  auto at = [&](std::size_t ix, std::size_t iy) { return u[ix * ny + iy]; };
  std::vector<double> res;
  res.reserve((nx - 2) * (ny - 2));
  for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
    for (std::size_t iy = 1; iy + 1 < ny; ++iy) {
      const double ux = (at(ix + 1, iy) - at(ix - 1, iy)) / (2.0 * h);
      const double uy = (at(ix, iy + 1) - at(ix, iy - 1)) / (2.0 * h);
      const double uxx = (at(ix + 1, iy) - 2.0 * at(ix, iy) + at(ix - 1, iy)) / (h * h);
      const double uyy = (at(ix, iy + 1) - 2.0 * at(ix, iy) + at(ix, iy - 1)) / (h * h);
      const double uxy = (at(ix + 1, iy + 1) - at(ix + 1, iy - 1) -
                          at(ix - 1, iy + 1) + at(ix - 1, iy - 1)) / (4.0 * h * h);
      const double w2 = 1.0 + ux * ux + uy * uy;
      const double w = std::sqrt(w2);
      const double div_term = ((1.0 + uy * uy) * uxx - 2.0 * ux * uy * uxy +
                               (1.0 + ux * ux) * uyy) / (w2 * w);
      const double uv = at(ix, iy);
      res.push_back(div_term +
                    (2.0 / (uv * uv * w)) * (uv + k.a * ux + k.b * uy));
    }
  }
  return make_report(std::move(res), h);
}

GeneratingCurve horizontal_profile(double height, double x_lo, double x_hi,
                                   std::size_t n) {
  if (!(height > 0.0) || !(x_hi > x_lo) || n < 2) {
    throw std::invalid_argument("horizontal_profile: invalid parameters");
  }
  GeneratingCurve curve;
  curve.family = CurveFamily::Profile;
  curve.a = 0.0;
  curve.apex_height = height;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    curve.samples.push_back({x - x_lo, x, height, 0.0});
    curve.theta_rate.push_back(0.0);
  }
  return curve;
}

GeneratingCurve hemisphere_profile(double s_lo, double s_hi, std::size_t n) {
  if (!(s_lo > 0.0) || !(s_hi < kPi / 2.0) || !(s_hi > s_lo) || n < 2) {
    throw std::invalid_argument(
        "hemisphere_profile: need 0 < s_lo < s_hi < pi/2");
  }
  GeneratingCurve curve;
  curve.family = CurveFamily::Profile;
  curve.a = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    curve.samples.push_back({s, std::sin(s), std::cos(s), -s});
    curve.theta_rate.push_back(-1.0);
  }
  curve.apex_height = std::cos(s_lo);
  return curve;
}

}  // namespace grim
