#include "doctest.h"

#include <cmath>

#include "grim/halfspace.hpp"

using namespace grim;

TEST_CASE("hyp_inner is the conformally scaled Euclidean product") {
  HalfSpacePoint p{0.3, -1.2, 2.0};
  Vec3 u{1.0, 2.0, 3.0};
  Vec3 v{-4.0, 0.5, 1.0};
  CHECK(hyp_inner(p, u, v) == doctest::Approx(dot_e(u, v) / 4.0).epsilon(1e-15));

  // unit coordinate field has hyperbolic length 1/z
  Vec3 ex{1.0, 0.0, 0.0};
  CHECK(hyp_inner({0, 0, 0.5}, ex, ex) == doctest::Approx(4.0));

  CHECK_THROWS_AS(hyp_inner({0, 0, 0.0}, u, v), std::domain_error);
  CHECK_THROWS_AS(hyp_inner({0, 0, -1.0}, u, v), std::domain_error);
}

TEST_CASE("mean_curvature_from_euclidean") {
  CHECK(mean_curvature_from_euclidean(1.0, 0.5, 0.2) == doctest::Approx(0.7));
  // horosphere z = const: H_e = 0, N_e = e3 gives H = 1 at every height
  CHECK(mean_curvature_from_euclidean(0.01, 0.0, 1.0) == 1.0);
  CHECK(mean_curvature_from_euclidean(7.0, 0.0, 1.0) == 1.0);
  CHECK_THROWS_AS(mean_curvature_from_euclidean(0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("soliton_residual_pointwise") {
  // horosphere point: H = 1, horizontal normal components vanish, so the
  // residual equals 1 regardless of (a, b)
  CurvatureData horo{0.0, {0.0, 0.0, 1.0}, 1.0};
  HalfSpacePoint p{1.0, 2.0, 3.0};
  CHECK(soliton_residual_pointwise(horo, p, {5.0, -2.0}) == doctest::Approx(1.0));

  // generic consistent record
  const double th = 0.7;
  CurvatureData cd;
  cd.H_e = 0.25;
  cd.N_e = {-std::sin(th), 0.0, std::cos(th)};
  cd.H = p.z * cd.H_e + cd.N_e[2];
  const double r = soliton_residual_pointwise(cd, p, {2.0, 0.5});
  CHECK(r == doctest::Approx(cd.H - 2.0 * (-std::sin(th)) / p.z).epsilon(1e-14));

  SUBCASE("rejects non-unit normal") {
    CurvatureData bad = cd;
    bad.N_e = {0.0, 0.0, 2.0};
    bad.H = p.z * bad.H_e + bad.N_e[2];
    CHECK_THROWS_AS(soliton_residual_pointwise(bad, p, {1.0, 0.0}),
                    std::invalid_argument);
  }
  SUBCASE("rejects inconsistent H") {
    CurvatureData bad = cd;
    bad.H += 1e-6;
    CHECK_THROWS_AS(soliton_residual_pointwise(bad, p, {1.0, 0.0}),
                    std::invalid_argument);
  }
  SUBCASE("rejects z <= 0") {
    CHECK_THROWS_AS(soliton_residual_pointwise(cd, {0, 0, 0}, {1.0, 0.0}),
                    std::domain_error);
  }
}

TEST_CASE("KillingFieldParams::is_zero") {
  CHECK(KillingFieldParams{0.0, 0.0}.is_zero());
  CHECK_FALSE(KillingFieldParams{1.0, 0.0}.is_zero());
  CHECK_FALSE(KillingFieldParams{0.0, -0.1}.is_zero());
}
