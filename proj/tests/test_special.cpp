// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qwell/series.hpp"
#include "qwell/special.hpp"

using namespace qwell;

TEST_CASE("erf primitive agrees with its Maclaurin series on |x| <= 1") {
  // The series module supplies the reference coefficients; at order 41 the
  // truncation error at x = 1 is far below the 1e-14 contract.
  const Series ref = maclaurin(MaclaurinFn::erf, 41);
  for (int i = -20; i <= 20; ++i) {
    const double x = 0.05 * i;
    const double want = ref.eval(x);
    const double got = special::erf(x);
    CHECK(std::fabs(got - want) <= 1e-14 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("erfcx continued fraction matches the direct product") {
  // Both branches are valid on [4, 20]; the direct product in long double is
  // the reference.
  for (int i = 0; i <= 64; ++i) {
    const long double x = 4.0L + 0.25L * i;
    const long double direct = expl(x * x) * erfcl(x);
    const double got = special::erfcx(static_cast<double>(x));
    CHECK(std::fabs(got - static_cast<double>(direct)) <=
          5e-14 * static_cast<double>(direct));
  }
}

TEST_CASE("erfcx endpoints and asymptote") {
  CHECK(special::erfcx(0.0) == 1.0);
  // 1/(x sqrt(pi)) leading behaviour
  const double x = 150.0;
  const double lead = 1.0 / (x * std::sqrt(std::acos(-1.0)));
  CHECK(special::erfcx(x) == doctest::Approx(lead).epsilon(1e-4));
  double prev = special::erfcx(0.0);
  for (double t = 0.25; t <= 30.0; t += 0.25) {
    const double cur = special::erfcx(t);
    CHECK(cur < prev);
    CHECK(cur > 0.0);
    prev = cur;
  }
  CHECK_THROWS_AS(special::erfcx(-0.5), std::domain_error);
}
