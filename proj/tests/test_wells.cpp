// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qwell/wells.hpp"

using namespace qwell;

TEST_CASE("gaussian profile values") {
  const WellShape g = WellShape::gaussian();
  CHECK(shape_value(g, 0.0) == 1.0);
  CHECK(shape_value(g, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(shape_value(g, 1.0) == doctest::Approx(0.3678794).epsilon(1e-6));
}

TEST_CASE("square profile is an indicator") {
  const WellShape s = WellShape::square(1.0);
  CHECK(shape_value(s, 0.5) == 1.0);
  CHECK(shape_value(s, 1.5) == 0.0);
  CHECK(shape_value(s, 1.0) == 1.0);  // boundary included
  CHECK_THROWS_AS(WellShape::square(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WellShape::square(-2.0), std::invalid_argument);
}

TEST_CASE("potential values") {
  const Potential pg{WellShape::gaussian(), 5.0};
  CHECK(potential_value(pg, 0.0) == -5.0);
  CHECK(potential_value(pg, 40.0) == doctest::Approx(0.0).epsilon(1e-300));
  const Potential ps{WellShape::square(1.0), 2.0};
  CHECK(potential_value(ps, 0.3) == -2.0);
  CHECK_THROWS_AS(potential_value(Potential{WellShape::gaussian(), -1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("profiles are exactly even") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  const WellShape g = WellShape::gaussian();
  const WellShape s = WellShape::square(1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    CHECK(shape_value(g, -x) == shape_value(g, x));
    CHECK(shape_value(s, -x) == shape_value(s, x));
  }
}

TEST_CASE("profiles do not increase for x > 0") {
  const WellShape g = WellShape::gaussian();
  const WellShape s = WellShape::square(1.0);
  double prev_g = 1.0, prev_s = 1.0;
  for (int i = 1; i <= 400; ++i) {
    const double x = 0.02 * i;
    const double fg = shape_value(g, x), fs = shape_value(s, x);
    CHECK(fg <= prev_g);
    CHECK(fs <= prev_s);
    CHECK(fg >= 0.0);
    CHECK(fg <= 1.0);
    prev_g = fg;
    prev_s = fs;
  }
}
