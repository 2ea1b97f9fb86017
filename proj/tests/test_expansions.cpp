// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "qwell/errors.hpp"
#include "qwell/expansions.hpp"
#include "qwell/oracle.hpp"
#include "qwell/trial.hpp"

using namespace qwell;
using std::numbers::pi;

namespace {

const WellShape kGauss = WellShape::gaussian();

double rel(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// ---- exact rational pipeline oracle -------------------------------------
//
// In the variable w = sqrt(2a) the even harmonic curve is rational:
//   strength(w) = (w/2) (1 + w^2)^{3/2}   (rational Taylor coefficients)
//   energy(w)   = -w^2/4 - w^4/2
// so the whole expand/revert/compose pipeline can be replayed in exact
// arithmetic, independent of the floating-point Series engine.

using Rat = boost::multiprecision::cpp_rational;
using RSeries = std::vector<Rat>;  // index = degree, fixed length N+1

RSeries rmul(const RSeries& a, const RSeries& b, int n) {
  RSeries out(static_cast<std::size_t>(n) + 1, Rat(0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n && j <= n; ++j)
      out[static_cast<std::size_t>(i + j)] +=
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return out;
}

RSeries rcompose(const RSeries& outer, const RSeries& inner, int n) {
  RSeries r(static_cast<std::size_t>(n) + 1, Rat(0));
  r[0] = outer[static_cast<std::size_t>(n)];
  for (int k = n - 1; k >= 0; --k) {
    r = rmul(r, inner, n);
    r[0] += outer[static_cast<std::size_t>(k)];
  }
  return r;
}

RSeries rrevert(const RSeries& s, int n) {
  RSeries t(static_cast<std::size_t>(n) + 1, Rat(0));
  t[1] = Rat(1) / s[1];
  for (int m = 2; m <= n; ++m) {
    const RSeries e = rcompose(s, t, m);
    t[static_cast<std::size_t>(m)] = -e[static_cast<std::size_t>(m)] / s[1];
  }
  return t;
}

}  // namespace

TEST_CASE("even harmonic shallow series: the printed integer coefficients") {
  const auto s = shallow_expansion(Family::harmonic_even, 10);
  CHECK(s.variable == ShallowVariable::sqrt_a);
  CHECK(s.energy[0] == 0.0);
  CHECK(s.energy[1] == 0.0);
  CHECK(rel(s.energy[2], -1.0) <= 1e-10);
  CHECK(rel(s.energy[4], 4.0) <= 1e-10);
  CHECK(rel(s.energy[6], -48.0) <= 1e-10);
  CHECK(rel(s.energy[8], 832.0) <= 1e-10);
  CHECK(rel(s.energy[10], -17408.0) <= 1e-10);
  for (int k = 3; k <= 9; k += 2) CHECK(std::fabs(s.energy[k]) <= 1e-9);
}

TEST_CASE("even harmonic shallow series: exact rational replay") {
  const int n = 10;
  // strength(w) = (w/2)(1+w^2)^{3/2}
  RSeries binom(static_cast<std::size_t>(n) + 1, Rat(0));
  {
    // (1+u)^{3/2} coefficients with u = w^2
    Rat c(1);
    binom[0] = c;
    for (int k = 1; 2 * k <= n; ++k) {
      c *= Rat(3 - 2 * (k - 1), 2 * k);  // (3/2 - (k-1))/k
      binom[static_cast<std::size_t>(2 * k)] = c;
    }
  }
  RSeries strength(static_cast<std::size_t>(n) + 1, Rat(0));
  for (int k = 0; k + 1 <= n; ++k)
    strength[static_cast<std::size_t>(k + 1)] = binom[static_cast<std::size_t>(k)] / 2;

  RSeries energy_w(static_cast<std::size_t>(n) + 1, Rat(0));
  energy_w[2] = Rat(-1, 4);
  energy_w[4] = Rat(-1, 2);

  const RSeries w_of_v = rrevert(strength, n);
  const RSeries energy_v = rcompose(energy_w, w_of_v, n);

  const long want[11] = {0, 0, -1, 0, 4, 0, -48, 0, 832, 0, -17408};
  for (int k = 0; k <= n; ++k)
    CHECK(energy_v[static_cast<std::size_t>(k)] == Rat(want[k]));

  // and the floating-point engine agrees with the exact replay
  const auto fl = shallow_expansion(Family::harmonic_even, n);
  for (int k = 2; k <= n; k += 2)
    CHECK(rel(fl.energy[k], static_cast<double>(want[k])) <= 1e-10);
}

TEST_CASE("even exponential shallow pipeline: intermediates and result") {
  const auto s = shallow_expansion(Family::exponential_even, 8);
  CHECK(s.variable == ShallowVariable::a);
  const double sp = std::sqrt(pi);

  // strength(a) series
  CHECK(rel(s.strength_of_u[1], 1.0 / (2.0 * sp)) <= 1e-12);
  CHECK(std::fabs(s.strength_of_u[2]) <= 1e-12);
  CHECK(rel(s.strength_of_u[3], 3.0 / (4.0 * sp)) <= 1e-12);
  CHECK(rel(s.strength_of_u[4], -4.0 / (3.0 * pi)) <= 1e-12);
  CHECK(rel(s.strength_of_u[5], 9.0 / (8.0 * sp)) <= 1e-12);
  CHECK(rel(s.strength_of_u[1], 0.2820948) <= 1e-6);

  // reverted a(strength) series
  CHECK(rel(s.u_of_strength[1], 2.0 * sp) <= 1e-12);
  CHECK(rel(s.u_of_strength[1], 3.5449077) <= 1e-7);
  CHECK(rel(s.u_of_strength[3], -12.0 * std::pow(pi, 1.5)) <= 1e-12);
  CHECK(rel(s.u_of_strength[4], 128.0 * std::pow(pi, 1.5) / 3.0) <= 1e-12);
  CHECK(rel(s.u_of_strength[5], 144.0 * std::pow(pi, 2.5)) <= 1e-12);

  // energy(a) series opens as -a^2/10 - a^4/5 + 2 a^5/(5 sqrt(pi))
  CHECK(rel(s.energy_of_u[2], -0.1) <= 1e-12);
  CHECK(std::fabs(s.energy_of_u[3]) <= 1e-12);
  CHECK(rel(s.energy_of_u[4], -0.2) <= 1e-12);
  CHECK(rel(s.energy_of_u[5], 2.0 / (5.0 * sp)) <= 1e-12);

  // final energy(strength) series
  CHECK(rel(s.energy[2], -2.0 * pi / 5.0) <= 1e-10);
  CHECK(rel(s.energy[4], 8.0 * pi * pi / 5.0) <= 1e-10);
  CHECK(rel(s.energy[5], -64.0 * pi * pi / 15.0) <= 1e-10);
  CHECK(rel(s.energy[2], -1.2566371) <= 1e-7);
  CHECK(rel(s.energy[4], 15.791367) <= 1e-7);
  CHECK(rel(s.energy[5], -42.110312) <= 1e-7);
}

TEST_CASE("cubic term is absent from every variational shallow series") {
  const auto h = shallow_expansion(Family::harmonic_even, 8);
  const auto e = shallow_expansion(Family::exponential_even, 8);
  const auto sq = shallow_expansion(Family::exponential_even, 8, WellShape::square(1.0));
  CHECK(std::fabs(h.energy[3]) <= 1e-9);
  CHECK(std::fabs(e.energy[3]) <= 1e-9);
  CHECK(std::fabs(sq.energy[3]) <= 1e-9);

  // while the exact expansion keeps it
  const auto exact = reference_exact_shallow();
  CHECK(rel(exact.energy[3], std::sqrt(2.0) * pi) <= 1e-14);
}

TEST_CASE("square-well variational shallow series (derived constants)") {
  // Hand-derived from strength(a) = a e^{2a}/(4(1+a)^2) and
  // overlap(a) = 1 - e^{-2a}(2a^2+6a+5)/5:
  //   W = -(8/5) v^2 + (256/15) v^4 - (512/15) v^5 + ...
  const auto s = shallow_expansion(Family::exponential_even, 6, WellShape::square(1.0));
  CHECK(rel(s.energy[2], -8.0 / 5.0) <= 1e-10);
  CHECK(rel(s.energy[4], 256.0 / 15.0) <= 1e-10);
  CHECK(rel(s.energy[5], -512.0 / 15.0) <= 1e-10);
  // shallower leading coefficient than the exact -2 v^2 (upper bound)
  CHECK(s.energy[2] > -2.0);
}

TEST_CASE("stored exact shallow expansion") {
  const auto s = reference_exact_shallow();
  CHECK_FALSE(s.family.has_value());
  CHECK(s.energy[0] == 0.0);
  CHECK(s.energy[1] == 0.0);
  CHECK(rel(s.energy[2], -pi / 2.0) <= 1e-15);
  CHECK(rel(s.energy[2], -1.5707963) <= 1e-7);
  CHECK(rel(s.energy[3], std::sqrt(2.0) * pi) <= 1e-15);
  CHECK(rel(s.energy[3], 4.4428829) <= 1e-7);
  CHECK(rel(s.energy[4], -pi * (2.0 * pi + 3.0 * std::sqrt(3.0) + 3.0) / 3.0) <= 1e-15);
  CHECK(rel(s.energy[5], std::sqrt(2.0) * pi * (2.0 * pi + 3.0 * std::sqrt(3.0)) / 3.0) <=
        1e-15);

  // Leading-term ordering: exact below exponential below harmonic.
  const auto e = shallow_expansion(Family::exponential_even, 4);
  const auto h = shallow_expansion(Family::harmonic_even, 4);
  CHECK(std::fabs(s.energy[2]) > std::fabs(e.energy[2]));
  CHECK(std::fabs(e.energy[2]) > std::fabs(h.energy[2]));
  CHECK(std::fabs(h.energy[2]) == doctest::Approx(1.0));
}

TEST_CASE("truncated shallow series matches the optimizer at strength 0.05") {
  const double v0 = 0.05;
  const auto h = shallow_expansion(Family::harmonic_even, 10);
  const double wh = optimize_parameter(Family::harmonic_even, kGauss, v0).energy;
  CHECK(std::fabs(h.energy.eval(v0) - wh) <= 1e-8);

  const auto e = shallow_expansion(Family::exponential_even, 12);
  const double we = optimize_parameter(Family::exponential_even, kGauss, v0).energy;
  CHECK(std::fabs(e.energy.eval(v0) - we) <= 1e-8);
}

TEST_CASE("shallow expansion preconditions") {
  CHECK_THROWS_AS(shallow_expansion(Family::harmonic_even, 1), std::invalid_argument);
  CHECK_THROWS_AS(shallow_expansion(Family::harmonic_odd, 8), std::domain_error);
  CHECK_THROWS_AS(shallow_expansion(Family::exponential_odd, 8), std::domain_error);
  CHECK_THROWS_AS(shallow_expansion(Family::harmonic_even, 8, WellShape::square(1.0)),
                  std::domain_error);
}

TEST_CASE("deep expansions: sequential-limit fit matches the closed forms") {
  const auto even = deep_expansion_fit(Family::harmonic_even);
  CHECK(rel(even.fitted.A, -1.0) <= 1e-4);
  CHECK(rel(even.fitted.B, std::sqrt(2.0) / 2.0) <= 1e-4);
  CHECK(rel(even.fitted.C, -3.0 / 16.0) <= 1e-4);
  CHECK(rel(even.a1_fitted, -3.0 / 8.0) <= 1e-4);
  CHECK(rel(even.a2_fitted, 3.0 * std::sqrt(2.0) / 128.0) <= 1e-4);
  CHECK(even.a2_analytic == doctest::Approx(0.0331456).epsilon(1e-5));

  const auto odd = deep_expansion_fit(Family::harmonic_odd);
  CHECK(rel(odd.fitted.A, -1.0) <= 1e-4);
  CHECK(rel(odd.fitted.B, 3.0 * std::sqrt(2.0) / 2.0) <= 1e-4);
  CHECK(rel(odd.fitted.C, -15.0 / 16.0) <= 1e-4);
  CHECK(rel(odd.a1_fitted, -5.0 / 8.0) <= 1e-4);
  CHECK(rel(odd.a2_fitted, -5.0 * std::sqrt(2.0) / 128.0) <= 1e-4);

  // The even fit agrees with the exact deep expansion at n = 0 exactly.
  const auto ref0 = reference_exact_deep(0);
  CHECK(even.analytic.A == ref0.A);
  CHECK(even.analytic.B == ref0.B);
  CHECK(even.analytic.C == ref0.C);
  const auto ref1 = reference_exact_deep(1);
  CHECK(odd.analytic.A == ref1.A);
  CHECK(odd.analytic.B == ref1.B);
  CHECK(odd.analytic.C == ref1.C);

  // Residual against the three-term form decays along the ladder.
  for (std::size_t k = 2; k < even.residuals.size(); k += 2)
    CHECK(even.residuals[k] < even.residuals[k - 2]);

  CHECK_THROWS_AS(deep_expansion_fit(Family::exponential_even), std::domain_error);
}

TEST_CASE("exact deep expansion reference") {
  const auto r0 = reference_exact_deep(0);
  CHECK(r0.A == -1.0);
  CHECK(r0.B == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(r0.B == doctest::Approx(0.7071068).epsilon(1e-7));
  CHECK(r0.C == -3.0 / 16.0);

  const auto r1 = reference_exact_deep(1);
  CHECK(r1.B == doctest::Approx(2.1213203).epsilon(1e-7));
  CHECK(r1.C == -15.0 / 16.0);
  CHECK(r1.C / r0.C == doctest::Approx(5.0).epsilon(1e-15));

  CHECK_THROWS_AS(reference_exact_deep(-1), std::invalid_argument);
}
