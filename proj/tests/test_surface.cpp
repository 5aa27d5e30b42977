#include "doctest.h"

#include <cmath>
#include <numbers>

#include "grim/surface.hpp"

using namespace grim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pairwise_sum") {
  CHECK(pairwise_sum({}) == 0.0);
  CHECK(pairwise_sum({1.0, 2.0, 3.0}) == 6.0);
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-13));
}

TEST_CASE("extrude_parabolic mesh layout") {
  const auto prof = horizontal_profile(1.0, 0.0, 2.0, 9);
  const auto mesh = extrude_parabolic(prof, -1.0, 1.0, 5);
  CHECK(mesh.provenance == SurfaceProvenance::Parabolic);
  CHECK(mesh.ns == 9);
  CHECK(mesh.nt == 5);
  REQUIRE(mesh.vertices.size() == 45);
  REQUIRE(mesh.curvature.size() == 45);
  CHECK(mesh.vertices[mesh.index(0, 0)].y == -1.0);
  CHECK(mesh.vertices[mesh.index(0, 4)].y == 1.0);
  // flat profile: N_e = e3, H_e = 0, H = 1
  for (const auto& cd : mesh.curvature) {
    CHECK(cd.H_e == 0.0);
    CHECK(cd.N_e[2] == doctest::Approx(1.0));
    CHECK(cd.H == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(extrude_parabolic(prof, 1.0, -1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(extrude_parabolic(prof, -1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("horosphere: H identically 1 along both curvature routes") {
  const auto prof = horizontal_profile(2.0, 0.5, 3.0, 33);
  const auto mesh = revolve_spherical(prof, 48);
  for (const auto& cd : mesh.curvature) {
    CHECK(std::abs(cd.H - 1.0) < 1e-13);
  }
  const auto hfd = mesh_mean_curvature_fd(mesh);
  double worst = 0.0;
  for (double h : hfd) worst = std::max(worst, std::abs(h - 1.0));
  CHECK(worst < 1e-6);
}

TEST_CASE("hemisphere: H identically 0 (minimal)") {
  const auto prof = hemisphere_profile(0.3, 1.2, 129);
  const auto mesh = revolve_spherical(prof, 256);
  for (const auto& cd : mesh.curvature) {
    CHECK(std::abs(cd.H) < 1e-13);
  }
  const auto hfd = mesh_mean_curvature_fd(mesh);
  double worst = 0.0;
  for (double h : hfd) worst = std::max(worst, std::abs(h));
  CHECK(worst < 1e-4);
}

TEST_CASE("revolve_spherical rejects profiles touching the axis") {
  const auto prof = horizontal_profile(1.0, 0.0, 1.0, 9);
  CHECK_THROWS_AS(revolve_spherical(prof, 16), std::domain_error);
  const auto ok = horizontal_profile(1.0, 0.5, 1.0, 9);
  CHECK_THROWS_AS(revolve_spherical(ok, 2), std::invalid_argument);
}

TEST_CASE("spherical obstruction coefficients") {
  // horosphere profile: z' = 0, so c1 = c2 = 0 and c0 = 1
  const auto horo = horizontal_profile(1.0, 0.5, 2.0, 17);
  const auto fo = spherical_obstruction(horo, {1.0, 2.0});
  for (std::size_t i = 0; i < fo.s.size(); ++i) {
    CHECK(fo.c0[i] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fo.c1[i] == 0.0);
    CHECK(fo.c2[i] == 0.0);
  }
  // hemisphere: z' != 0, so (c1, c2) != (0, 0) whenever (a, b) != 0
  const auto hemi = hemisphere_profile(0.3, 1.2, 17);
  const auto fo2 = spherical_obstruction(hemi, {1.0, 0.5});
  double c1max = 0.0, c2max = 0.0;
  for (std::size_t i = 0; i < fo2.s.size(); ++i) {
    c1max = std::max(c1max, std::abs(fo2.c1[i]));
    c2max = std::max(c2max, std::abs(fo2.c2[i]));
  }
  CHECK(c1max > 0.1);
  CHECK(c2max > 0.05);
}

TEST_CASE("obstruction reconstructs the full residual on a spherical mesh") {
  const auto prof = hemisphere_profile(0.3, 1.2, 33);
  const auto mesh = revolve_spherical(prof, 64);
  const KillingFieldParams k{1.0, 2.0};
  const auto res = soliton_residual(mesh, k, CurvatureSource::Analytic);
  const auto fo = spherical_obstruction(prof, k);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.ns; ++i) {
    for (std::size_t j = 0; j < mesh.nt; ++j) {
      const double t = mesh.t_values[j];
      const double pred = fo.c0[i] + fo.c1[i] * std::cos(t) + fo.c2[i] * std::sin(t);
      worst = std::max(worst,
                       std::abs(res.per_vertex[mesh.index(i, j)] - pred));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("hyperbolic cone checks") {
  const KillingFieldParams k{1.0, 2.0};
  auto line = [](double ux, double uy) {
    std::vector<std::array<double, 2>> pr;
    for (int i = 0; i <= 40; ++i) {
      const double s = -1.0 + 0.05 * i;
      pr.push_back({s * ux, s * uy});
    }
    return pr;
  };
  const double nrm = std::sqrt(5.0);
  // origin line parallel to (a, b): both sides vanish
  const auto par = hyperbolic_cone_check(line(1.0 / nrm, 2.0 / nrm), k, 0.05);
  CHECK(par.max_abs_L < 1e-10);
  CHECK(par.max_abs_R < 1e-10);
  // non-parallel origin line: R does not vanish
  const auto npar = hyperbolic_cone_check(line(1.0, 0.0), k, 0.05);
  CHECK(npar.max_abs_L < 1e-10);
  CHECK(npar.max_abs_R > 1.0);
  // circle profile: the cone is not minimal, L does not vanish
  std::vector<std::array<double, 2>> circ;
  for (int i = 0; i <= 40; ++i) {
    const double s = 0.05 * i;
    circ.push_back({2.0 * std::cos(s / 2.0), 2.0 * std::sin(s / 2.0)});
  }
  const auto cc = hyperbolic_cone_check(circ, k, 0.05);
  CHECK(cc.max_abs_L > 1.0);

  CHECK_THROWS_AS(hyperbolic_cone_check({{0, 0}, {1, 0}}, k, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(hyperbolic_cone_check(line(1, 0), k, 0.0), std::invalid_argument);
}

TEST_CASE("curvature_fd validation") {
  const auto prof = horizontal_profile(1.0, 0.5, 2.0, 3);
  auto mesh = extrude_parabolic(prof, 0.0, 1.0, 3);
  CHECK_THROWS_AS(curvature_fd(mesh), std::invalid_argument);  // too small
  auto mesh2 = extrude_parabolic(horizontal_profile(1.0, 0.5, 2.0, 9), 0.0, 1.0, 5);
  mesh2.s_values[1] += 0.1;  // break uniformity
  CHECK_THROWS_AS(curvature_fd(mesh2), std::invalid_argument);
}

TEST_CASE("graph_pde_residual") {
  SUBCASE("constant graph") {
    // u = c: residual reduces to 2/c at every interior node
    const double c = 1.7;
    std::vector<double> u(25, c);
    const auto rep = graph_pde_residual(u, 5, 5, {1.0, 0.0}, 0.1);
    REQUIRE(rep.per_vertex.size() == 9);
    for (double r : rep.per_vertex) {
      CHECK(r == doctest::Approx(2.0 / c).epsilon(1e-13));
    }
  }
  SUBCASE("b drops out for y-constant data, bit for bit") {
    std::vector<double> u(7 * 5);
    for (std::size_t ix = 0; ix < 7; ++ix) {
      for (std::size_t iy = 0; iy < 5; ++iy) {
        u[ix * 5 + iy] = 1.0 + 0.1 * static_cast<double>(ix * ix);
      }
    }
    const auto r0 = graph_pde_residual(u, 7, 5, {1.0, 0.0}, 0.05);
    const auto r3 = graph_pde_residual(u, 7, 5, {1.0, 3.0}, 0.05);
    CHECK(r0.per_vertex == r3.per_vertex);
  }
  SUBCASE("validation") {
    std::vector<double> u(9, 1.0);
    CHECK_THROWS_AS(graph_pde_residual(u, 3, 3, {1, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(graph_pde_residual(u, 2, 4, {1, 0}, 0.1), std::invalid_argument);
    u[4] = -1.0;
    CHECK_THROWS_AS(graph_pde_residual(u, 3, 3, {1, 0}, 0.1), std::domain_error);
  }
}

TEST_CASE("profile constructors validate") {
  CHECK_THROWS_AS(horizontal_profile(-1.0, 0.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(horizontal_profile(1.0, 1.0, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(hemisphere_profile(0.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(hemisphere_profile(0.3, kPi, 5), std::invalid_argument);
}
