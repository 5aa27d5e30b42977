#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "grim/quadrature.hpp"

using namespace grim;

TEST_CASE("polynomial and smooth integrands") {
  auto sq = [](double x) { return x * x; };
  CHECK(integrate_adaptive(sq, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  auto s = [](double x) { return std::sin(x); };
  CHECK(integrate_adaptive(s, 0.0, M_PI, 1e-12) == doctest::Approx(2.0).epsilon(1e-13));

  // reversed orientation flips the sign
  CHECK(integrate_adaptive(sq, 1.0, 0.0, 1e-12) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("endpoint derivative singularity sqrt(x)") {
  auto f = [](double x) { return std::sqrt(x); };
  const double v = integrate_adaptive(f, 0.0, 1.0, 1e-12);
  CHECK(std::abs(v - 2.0 / 3.0) < 1e-12);
  // and at a tighter target still
  const double w = integrate_adaptive(f, 0.0, 1.0, 1e-13);
  CHECK(std::abs(w - 2.0 / 3.0) < 1e-13);
}

TEST_CASE("degenerate interval and bad tolerance") {
  auto f = [](double x) { return std::exp(x); };
  CHECK(integrate_adaptive(f, 0.5, 0.5, 1e-10) == 0.0);
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, -1e-8), std::invalid_argument);
}
