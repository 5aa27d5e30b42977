#include "doctest.h"

#include <cmath>
#include <numbers>

#include "grim/curve.hpp"

using namespace grim;

namespace {
constexpr double kPi = std::numbers::pi;

OdeParams base_params() {
  OdeParams p;
  p.a = 1.0;
  p.z_min = 1e-3;
  return p;
}
}  // namespace

TEST_CASE("build_reaper structure") {
  const auto c = build_reaper(2.0, 1.0, base_params());
  CHECK(c.family == CurveFamily::Reaper);
  CHECK(c.a == 1.0);
  CHECK(c.apex_height == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(c.samples.size() == c.theta_rate.size());
  REQUIRE(c.turning_index.has_value());
  // the inserted turning sample is exact
  const auto& tp = c.samples[*c.turning_index];
  CHECK(std::abs(tp.theta - kPi / 2.0) < 1e-12);
  // samples ascend in s and stay above the cutoff
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    CHECK(c.samples[i].s > c.samples[i - 1].s);
    CHECK(c.samples[i].z >= 1e-3 * (1.0 - 1e-9));
  }
  // theta_rate really is the rhs rate
  for (std::size_t i = 0; i < c.samples.size(); i += 97) {
    CHECK(c.theta_rate[i] == doctest::Approx(theta_rate(c.samples[i], 1.0)));
  }

  CHECK_THROWS_AS(build_reaper(2.0, 0.0, base_params()), std::invalid_argument);
  CHECK_THROWS_AS(build_reaper(1e-9, 1.0, base_params()), std::domain_error);
}

TEST_CASE("bi-graph decomposition") {
  const auto c = build_reaper(2.0, 1.0, base_params());
  const auto bg = to_bigraph(c);
  CHECK(bg.lower.size() > 10);
  CHECK(bg.upper.size() > 10);
  // branches share the turning point and are graphs over x
  CHECK(bg.lower.front().first == bg.upper.front().first);
  CHECK(bg.lower.front().second == bg.upper.front().second);
  for (std::size_t i = 1; i < bg.lower.size(); ++i) {
    CHECK(bg.lower[i].first > bg.lower[i - 1].first);
    CHECK(bg.lower[i].second <= bg.lower[i - 1].second + 1e-12);
  }
  for (std::size_t i = 1; i < bg.upper.size(); ++i) {
    CHECK(bg.upper[i].first > bg.upper[i - 1].first);
  }

  OdeParams p0 = base_params();
  p0.a = 0.0;
  CHECK_THROWS_AS(to_bigraph(build_minimal_reaper(1.0, p0)), std::invalid_argument);
}

TEST_CASE("minimal reaper arch") {
  OdeParams p = base_params();
  p.switch_height = 0.0;
  const auto c = build_minimal_reaper(1.0, p);
  CHECK(c.family == CurveFamily::MinimalReaper);
  CHECK(c.a == 0.0);
  CHECK(c.apex_height == doctest::Approx(1.0).epsilon(1e-12));
  // concave: theta_rate < 0 everywhere on the arch
  for (double r : c.theta_rate) CHECK(r < 0.0);
  // near-orthogonal ends
  CHECK(std::abs(std::abs(c.samples.front().theta) - kPi / 2.0) < 1e-2);
  CHECK(std::abs(std::abs(c.samples.back().theta) - kPi / 2.0) < 1e-2);
  CHECK_THROWS_AS(build_minimal_reaper(1e-9, p), std::domain_error);
}

TEST_CASE("half_width quadrature and scaling") {
  // frozen unit value (independent high-tolerance quadrature run)
  const double w1 = half_width(1.0, 1e-12);
  CHECK(w1 == doctest::Approx(0.599070117367796).epsilon(1e-12));
  CHECK(half_width(3.0, 1e-12) == doctest::Approx(3.0 * w1).epsilon(1e-11));
  CHECK_THROWS_AS(half_width(-1.0, 1e-10), std::domain_error);
  CHECK_THROWS_AS(half_width(1.0, 0.0), std::domain_error);
}

TEST_CASE("minimal_x_span matches 2 w(z0)") {
  OdeParams p = base_params();
  p.a = 0.0;
  p.switch_height = 0.0;
  p.output_step = 0.001;
  for (double z0 : {0.5, 2.0}) {
    const auto c = build_minimal_reaper(z0, p);
    CHECK(minimal_x_span(c) ==
          doctest::Approx(2.0 * half_width(z0, 1e-12)).epsilon(5e-3));
  }
  CHECK_THROWS_AS(minimal_x_span(build_reaper(1.0, 1.0, base_params())),
                  std::invalid_argument);
}

TEST_CASE("vertical plane curve") {
  const auto c = vertical_plane_curve(0.7, 0.5, 3.0);
  CHECK(c.family == CurveFamily::VerticalPlane);
  REQUIRE(c.samples.size() == 2);
  CHECK(c.samples[0].x == 0.7);
  CHECK(c.samples[1].x == 0.7);
  CHECK(c.samples[0].theta == doctest::Approx(kPi / 2.0));
  CHECK(c.apex_height == 3.0);
  CHECK_THROWS_AS(vertical_plane_curve(0.0, -1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(vertical_plane_curve(0.0, 2.0, 1.0), std::domain_error);
}

TEST_CASE("resample_uniform") {
  const auto c = build_reaper(1.0, 1.0, base_params());
  const auto r = resample_uniform(c, 101);
  REQUIRE(r.samples.size() == 101);
  CHECK(r.samples.front().s == doctest::Approx(c.samples.front().s));
  CHECK(r.samples.back().s == doctest::Approx(c.samples.back().s));
  const double step = (c.samples.back().s - c.samples.front().s) / 100.0;
  for (std::size_t i = 1; i < r.samples.size(); ++i) {
    CHECK(r.samples[i].s - r.samples[i - 1].s == doctest::Approx(step).epsilon(1e-10));
  }
  // interpolant stays near the source curve: compare at a shared abscissa
  for (const auto& st : r.samples) {
    CHECK(st.z > 0.0);
    CHECK(st.z <= c.apex_height * (1.0 + 1e-9));
  }
  CHECK_THROWS_AS(resample_uniform(c, 1), std::invalid_argument);
}

TEST_CASE("to_string(CurveFamily)") {
  CHECK(std::string(to_string(CurveFamily::MinimalReaper)) == "MinimalReaper");
  CHECK(std::string(to_string(CurveFamily::Reaper)) == "Reaper");
  CHECK(std::string(to_string(CurveFamily::VerticalPlane)) == "VerticalPlane");
  CHECK(std::string(to_string(CurveFamily::Profile)) == "Profile");
}
