// SPDX-License-Identifier: Apache-2.0
#include "qwell/expansions.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qwell/errors.hpp"

namespace qwell {

namespace {

using std::numbers::pi;
const double kSqrtPi = std::sqrt(pi);
const double kSqrt2 = std::numbers::sqrt2;

// exp(u^2) erfc(u) as a Maclaurin series, assembled from the exp and erf
// primitives (numerical differentiation cannot reach degree 10 reliably).
Series erfcx_series(int order) {
  Series x2(order);
  if (order >= 2) x2.set(2, 1.0);
  const Series e = compose(maclaurin(MaclaurinFn::exp, order), x2);
  return e - e * maclaurin(MaclaurinFn::erf, order);
}

// Polynomial helper: coefficients given from degree 0 upward, padded to order.
Series poly(std::initializer_list<double> coeffs, int order) {
  Series s(coeffs);
  return s.padded(order);
}

ShallowSeries finish_pipeline(ShallowSeries s, int order) {
  s.u_of_strength = revert(s.strength_of_u);
  s.energy = compose(s.energy_of_u, s.u_of_strength).truncated(order);
  return s;
}

ShallowSeries shallow_harmonic_even(int order) {
  // Work two orders high internally so the final truncation is clean.
  const int n = order + 2;
  ShallowSeries s;
  s.family = Family::harmonic_even;
  s.shape = Shape::gaussian;
  s.variable = ShallowVariable::sqrt_a;

  // strength(u) = (sqrt2/2) u (1 + 2u^2)^(3/2),  u = sqrt(a)
  Series two_u2(n);
  if (n >= 2) two_u2.set(2, 2.0);
  s.strength_of_u =
      (Series::identity(n) * compose(binomial(1.5, n), two_u2)).scaled(0.5 * kSqrt2);

  // W(u) = -(1/2) u^2 - 2 u^4
  s.energy_of_u = poly({0.0, 0.0, -0.5, 0.0, -2.0}, n);
  return finish_pipeline(std::move(s), order);
}

ShallowSeries shallow_exponential_even_gaussian(int order) {
  const int n = order + 2;
  ShallowSeries s;
  s.family = Family::exponential_even;
  s.shape = Shape::gaussian;
  s.variable = ShallowVariable::a;

  const Series scaled_erfcx = erfcx_series(n).scaled(kSqrtPi);

  // Denominator of the parametric strength:
  //   sqrt(pi) e^{a^2} erfc(a) (4a^6 + 4a^4 - 5a^2 + 2) - 2a (2a^4 + a^2 - 2)
  const Series denom = scaled_erfcx * poly({2.0, 0.0, -5.0, 0.0, 4.0, 0.0, 4.0}, n) +
                       poly({0.0, 4.0, 0.0, -2.0, 0.0, -4.0}, n);
  s.strength_of_u = Series::identity(n) * denom.reciprocal();

  // Energy numerator:
  //   sqrt(pi) e^{a^2} erfc(a) (4a^6 + a^2 - 2) - 2a (2a^4 - a^2 + 2)
  const Series numer = scaled_erfcx * poly({-2.0, 0.0, 1.0, 0.0, 0.0, 0.0, 4.0}, n) +
                       poly({0.0, -4.0, 0.0, 2.0, 0.0, -4.0}, n);
  Series u2(n);
  if (n >= 2) u2.set(2, 1.0);
  s.energy_of_u = (u2 * numer * denom.reciprocal()).scaled(0.1);
  return finish_pipeline(std::move(s), order);
}

// Square box of half-width 1 with the even exponential trial family:
//   strength(a) = a e^{2a} / (4 (1+a)^2)
//   overlap(a)  = 1 - e^{-2a} (2a^2 + 6a + 5) / 5
//   W(a)        = a^2/10 - strength(a) * overlap(a)
ShallowSeries shallow_exponential_even_square(int order) {
  const int n = order + 2;
  ShallowSeries s;
  s.family = Family::exponential_even;
  s.shape = Shape::square;
  s.variable = ShallowVariable::a;

  Series two_u(n);
  two_u.set(1, 2.0);
  const Series exp_pos = compose(maclaurin(MaclaurinFn::exp, n), two_u);
  const Series exp_neg = compose(maclaurin(MaclaurinFn::exp, n), two_u.scaled(-1.0));

  s.strength_of_u =
      (Series::identity(n) * exp_pos * poly({1.0, 2.0, 1.0}, n).reciprocal())
          .scaled(0.25);
  const Series overlap =
      Series::constant(1.0, n) - (exp_neg * poly({5.0, 6.0, 2.0}, n)).scaled(0.2);

  Series u2(n);
  u2.set(2, 1.0);
  s.energy_of_u = u2.scaled(0.1) - s.strength_of_u * overlap;
  return finish_pipeline(std::move(s), order);
}

// Richardson extrapolation of y_k -> c0 + c1 s_k + c2 s_k^2 + ... on a
// geometric abscissa ladder s_{k+1} = rho s_k. Returns the tableau entry at
// the depth where successive corrections stop shrinking.
double sequential_limit(std::vector<double> y, double rho) {
  const int n = static_cast<int>(y.size());
  double best = y.back();
  double best_change = std::fabs(n >= 2 ? y[n - 1] - y[n - 2]
                                        : std::numeric_limits<double>::infinity());
  double factor = 1.0;
  std::vector<double> row = std::move(y);
  for (int level = 1; level < n; ++level) {
    factor *= rho;
    std::vector<double> next(row.size() - 1);
    for (std::size_t k = 0; k + 1 < row.size(); ++k)
      next[k] = (row[k + 1] - factor * row[k]) / (1.0 - factor);
    const double change = std::fabs(next.back() - row.back());
    if (change < best_change) {
      best_change = change;
      best = next.back();
    }
    row = std::move(next);
  }
  return best;
}

struct DeepAnalytic {
  DeepExpansion w;
  double a1, a2;
};

DeepAnalytic deep_analytic(Family f) {
  switch (f) {
    case Family::harmonic_even:
      return {{-1.0, 0.5 * kSqrt2, -3.0 / 16.0}, -3.0 / 8.0, 3.0 * kSqrt2 / 128.0};
    case Family::harmonic_odd:
      return {{-1.0, 1.5 * kSqrt2, -15.0 / 16.0}, -5.0 / 8.0, -5.0 * kSqrt2 / 128.0};
    default:
      throw std::domain_error(
          "deep_expansion_fit: closed deep expansions exist for the harmonic families only");
  }
}

}  // namespace

ShallowSeries shallow_expansion(Family f, int order) {
  return shallow_expansion(f, order, WellShape::gaussian());
}

ShallowSeries shallow_expansion(Family f, int order, const WellShape& shape) {
  if (order < 2)
    throw std::invalid_argument(
        "shallow_expansion: order must be at least 2 to resolve the leading term");
  if (family_traits(f).target_state != 0)
    throw std::domain_error(
        "shallow_expansion: odd families have no zero-strength branch");
  if (shape.kind == Shape::square) {
    if (f != Family::exponential_even)
      throw std::domain_error(
          "shallow_expansion: square-well series implemented for exp-even only");
    if (shape.half_width != 1.0)
      throw std::domain_error("shallow_expansion: square half-width must be 1");
    return shallow_exponential_even_square(order);
  }
  return f == Family::harmonic_even ? shallow_harmonic_even(order)
                                    : shallow_exponential_even_gaussian(order);
}

ShallowSeries reference_exact_shallow() {
  ShallowSeries s;
  s.family = std::nullopt;
  s.shape = Shape::gaussian;
  s.variable = ShallowVariable::a;
  Series e(5);
  e.set(2, -pi / 2.0);
  e.set(3, kSqrt2 * pi);
  e.set(4, -pi * (2.0 * pi + 3.0 * std::sqrt(3.0) + 3.0) / 3.0);
  e.set(5, kSqrt2 * pi * (2.0 * pi + 3.0 * std::sqrt(3.0)) / 3.0);
  s.energy = e;
  return s;
}

DeepFit deep_expansion_fit(Family f) {
  const DeepAnalytic an = deep_analytic(f);
  const WellShape gauss = WellShape::gaussian();

  // Half-decade ladder over strength in [1e3, 1e7].
  std::vector<double> ladder;
  for (int k = 0; k <= 8; ++k) ladder.push_back(std::pow(10.0, 3.0 + 0.5 * k));
  const double rho = std::pow(10.0, -0.25);  // ratio of 1/sqrt(strength)

  std::vector<double> a_opt, energy;
  for (double v : ladder) {
    const auto r = optimize_parameter(f, gauss, v);
    a_opt.push_back(r.a_opt);
    energy.push_back(r.energy);
  }

  const auto limit_of = [&](const std::function<double(std::size_t)>& term) {
    std::vector<double> full, trimmed;
    for (std::size_t k = 0; k < ladder.size(); ++k) full.push_back(term(k));
    trimmed.assign(full.begin(), full.end() - 2);  // ladder capped one decade lower
    const double est = sequential_limit(full, rho);
    const double est_lo = sequential_limit(trimmed, rho);
    const double scale = std::max({std::fabs(est), std::fabs(est_lo), 1e-12});
    if (std::fabs(est - est_lo) > 5e-5 * scale)
      throw numeric_error("deep_expansion_fit",
                          "extracted coefficient not stable across the top decades",
                          est, std::fabs(est - est_lo));
    return est;
  };

  DeepFit fit;
  fit.family = f;
  fit.analytic = an.w;
  fit.a1_analytic = an.a1;
  fit.a2_analytic = an.a2;
  fit.ladder = ladder;

  fit.fitted.A = limit_of([&](std::size_t k) { return energy[k] / ladder[k]; });
  fit.fitted.B = limit_of([&](std::size_t k) {
    return (energy[k] - an.w.A * ladder[k]) / std::sqrt(ladder[k]);
  });
  fit.fitted.C = limit_of([&](std::size_t k) {
    return energy[k] - an.w.A * ladder[k] - an.w.B * std::sqrt(ladder[k]);
  });
  fit.a1_fitted = limit_of([&](std::size_t k) {
    return a_opt[k] - 0.5 * std::sqrt(2.0 * ladder[k]);
  });
  fit.a2_fitted = limit_of([&](std::size_t k) {
    return (a_opt[k] - 0.5 * std::sqrt(2.0 * ladder[k]) - an.a1) * std::sqrt(ladder[k]);
  });

  for (std::size_t k = 0; k < ladder.size(); ++k)
    fit.residuals.push_back(std::fabs(energy[k] - (an.w.A * ladder[k] +
                                                   an.w.B * std::sqrt(ladder[k]) +
                                                   an.w.C)));
  return fit;
}

DeepExpansion reference_exact_deep(int n) {
  if (n < 0) throw std::invalid_argument("reference_exact_deep: n must be >= 0");
  return {-1.0, (n + 0.5) * kSqrt2, -3.0 / 16.0 * (1.0 + 2.0 * n + 2.0 * n * n)};
}

}  // namespace qwell
