// SPDX-License-Identifier: Apache-2.0
#include "qwell/trial.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qwell/errors.hpp"
#include "qwell/roots.hpp"
#include "qwell/special.hpp"

namespace qwell {

namespace {

constexpr long double kSqrtPiL = 1.7724538509055160272981674833411452L;

void require_positive_a(double a, const char* who) {
  if (!(a > 0.0)) throw std::invalid_argument(std::string(who) + ": a must be positive");
}

// Trial value and the partial derivatives the quadrature route needs.
struct TrialDerivs {
  double value;  // phi
  double dx;     // d phi / dx
  double da;     // d phi / da
  double dxda;   // d2 phi / (dx da)
};

TrialDerivs trial_derivs(Family f, double a, double x) {
  // Every component carries the exponential factor; once it underflows the
  // whole row is zero (keeps overflowing polynomial prefactors from making
  // inf * 0 under far-tail quadrature probing).
  switch (f) {
    case Family::harmonic_even: {
      const double e = std::exp(-a * x * x);
      if (e == 0.0) return {0.0, 0.0, 0.0, 0.0};
      return {e, -2.0 * a * x * e, -x * x * e, (-2.0 * x + 2.0 * a * x * x * x) * e};
    }
    case Family::harmonic_odd: {
      const double e = std::exp(-a * x * x);
      if (e == 0.0) return {0.0, 0.0, 0.0, 0.0};
      return {x * e, (1.0 - 2.0 * a * x * x) * e, -x * x * x * e,
              (-3.0 * x * x + 2.0 * a * x * x * x * x) * e};
    }
    case Family::exponential_even: {
      const double e = std::exp(-a * x);
      if (e == 0.0) return {0.0, 0.0, 0.0, 0.0};
      return {(1.0 + a * x) * e, -a * a * x * e, -a * x * x * e,
              (a * a * x * x - 2.0 * a * x) * e};
    }
    case Family::exponential_odd: {
      const double e = std::exp(-a * x);
      if (e == 0.0) return {0.0, 0.0, 0.0, 0.0};
      return {x * e, (1.0 - a * x) * e, -x * x * e, (a * x * x - 2.0 * x) * e};
    }
  }
  throw std::logic_error("trial_derivs: unknown family");
}

// Closed components for the exponential families, evaluated in extended
// precision: the large-a polynomial combinations cancel heavily and plain
// doubles lose too many digits near the top of the tested a range.
VariationalComponents closed_exponential(Family f, double a_in) {
  const long double a = a_in;
  const long double p = a * a;
  const long double I0 = 0.5L * kSqrtPiL * special::erfcx_l(a);
  VariationalComponents c;
  if (f == Family::exponential_even) {
    c.kinetic = static_cast<double>(p / 10.0L);
    c.d_kinetic = static_cast<double>(a / 5.0L);
    const long double g =
        (4.0L * a / 5.0L) * (I0 * ((p - 1.5L) * p + 1.0L) + a * (1.0L - 0.5L * p));
    const long double dg =
        (4.0L / 5.0L) *
        (I0 * (((2.0L * p + 2.0L) * p - 2.5L) * p + 1.0L) + a * (1.0L - 0.5L * p - p * p));
    c.overlap = static_cast<double>(g);
    c.d_overlap = static_cast<double>(dg);
  } else {
    c.kinetic = static_cast<double>(p / 2.0L);
    c.d_kinetic = static_cast<double>(a);
    const long double g = 2.0L * a * p * ((1.0L + 2.0L * p) * I0 - a);
    const long double dg =
        2.0L * p * (I0 * ((4.0L * p + 12.0L) * p + 3.0L) - a * (2.0L * p + 5.0L));
    c.overlap = static_cast<double>(g);
    c.d_overlap = static_cast<double>(dg);
  }
  return c;
}

struct RouteComponents {
  std::function<VariationalComponents(double)> eval;
};

RouteComponents component_route(Family f, const WellShape& shape) {
  if (shape.kind == Shape::gaussian)
    return {[f](double a) { return closed_components(f, a); }};
  return {[f, shape](double a) { return quad_components(f, shape, a); }};
}

ParametricPoint point_from_components(double a, const VariationalComponents& c) {
  const double scale = std::fabs(c.d_kinetic) + std::fabs(c.kinetic) + 1.0;
  if (std::fabs(c.d_overlap) < 1e-300 * scale)
    throw std::domain_error("parametric_point: overlap derivative vanishes (degenerate point)");
  ParametricPoint p;
  p.a = a;
  p.strength = c.d_kinetic / c.d_overlap;
  p.energy = c.kinetic - p.strength * c.overlap;
  return p;
}

}  // namespace

FamilyTraits family_traits(Family f) {
  switch (f) {
    case Family::harmonic_even:
      return {Parity::even, 0, Support::full_line};
    case Family::harmonic_odd:
      return {Parity::odd, 1, Support::full_line};
    case Family::exponential_even:
      return {Parity::even, 0, Support::half_line};
    case Family::exponential_odd:
      return {Parity::odd, 1, Support::half_line};
  }
  throw std::logic_error("family_traits: unknown family");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::harmonic_even:
      return "harm-even";
    case Family::harmonic_odd:
      return "harm-odd";
    case Family::exponential_even:
      return "exp-even";
    case Family::exponential_odd:
      return "exp-odd";
  }
  return "?";
}

double trial_value(Family f, double a, double x) {
  require_positive_a(a, "trial_value");
  if (family_traits(f).support == Support::half_line && x < 0.0)
    throw std::domain_error("trial_value: half-line family evaluated at x < 0");
  return trial_derivs(f, a, x).value;
}

VariationalComponents closed_components(Family f, double a) {
  require_positive_a(a, "closed_components");
  switch (f) {
    case Family::harmonic_even: {
      const double q = 2.0 * a / (2.0 * a + 1.0);
      VariationalComponents c;
      c.kinetic = 0.5 * a;
      c.d_kinetic = 0.5;
      c.overlap = std::sqrt(q);
      c.d_overlap = 1.0 / (std::sqrt(2.0 * a) * std::pow(2.0 * a + 1.0, 1.5));
      return c;
    }
    case Family::harmonic_odd: {
      const double q = 2.0 * a / (2.0 * a + 1.0);
      VariationalComponents c;
      c.kinetic = 1.5 * a;
      c.d_kinetic = 1.5;
      c.overlap = std::pow(q, 1.5);
      c.d_overlap = 3.0 * std::sqrt(q) / ((2.0 * a + 1.0) * (2.0 * a + 1.0));
      return c;
    }
    case Family::exponential_even:
    case Family::exponential_odd:
      return closed_exponential(f, a);
  }
  throw std::logic_error("closed_components: unknown family");
}

VariationalComponents quad_components(Family f, const WellShape& shape, double a,
                                      double rel_tol) {
  require_positive_a(a, "quad_components");

  boost::math::quadrature::exp_sinh<double> half_line;
  const auto integrate_tail = [&](const std::function<double(double)>& fn) {
    double err = 0.0, l1 = 0.0;
    const double v = half_line.integrate(fn, rel_tol, &err, &l1);
    if (!(std::isfinite(v)) || (l1 > 0.0 && err > 100.0 * rel_tol * l1))
      throw numeric_error("quad_components", "quadrature did not reach tolerance", v, err);
    return v;
  };
  // Square-shape overlap integrals live on [0, half_width] where f = 1.
  const auto integrate_box = [&](const std::function<double(double)>& fn, double hi) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        fn, 0.0, hi, 15, rel_tol, &err);
    if (!std::isfinite(v) || err > 100.0 * rel_tol * (std::fabs(v) + 1e-300))
      throw numeric_error("quad_components", "quadrature did not reach tolerance", v, err);
    return v;
  };

  const auto d = [f, a](double x) { return trial_derivs(f, a, x); };

  const double norm = integrate_tail([&](double x) { const auto t = d(x); return t.value * t.value; });
  const double kin = integrate_tail([&](double x) { const auto t = d(x); return t.dx * t.dx; });
  const double d_norm = integrate_tail([&](double x) { const auto t = d(x); return 2.0 * t.value * t.da; });
  const double d_kin = integrate_tail([&](double x) { const auto t = d(x); return 2.0 * t.dx * t.dxda; });

  double ovl = 0.0, d_ovl = 0.0;
  if (shape.kind == Shape::gaussian) {
    ovl = integrate_tail([&](double x) {
      const auto t = d(x);
      return std::exp(-x * x) * t.value * t.value;
    });
    d_ovl = integrate_tail([&](double x) {
      const auto t = d(x);
      return std::exp(-x * x) * 2.0 * t.value * t.da;
    });
  } else {
    ovl = integrate_box([&](double x) { const auto t = d(x); return t.value * t.value; },
                        shape.half_width);
    d_ovl = integrate_box([&](double x) { const auto t = d(x); return 2.0 * t.value * t.da; },
                          shape.half_width);
  }

  VariationalComponents c;
  c.kinetic = kin / (2.0 * norm);
  c.d_kinetic = (d_kin * norm - kin * d_norm) / (2.0 * norm * norm);
  c.overlap = ovl / norm;
  c.d_overlap = (d_ovl * norm - ovl * d_norm) / (norm * norm);
  return c;
}

ParametricPoint parametric_point(Family f, double a) {
  require_positive_a(a, "parametric_point");
  return point_from_components(a, closed_components(f, a));
}

ParametricPoint parametric_point(Family f, const WellShape& shape, double a) {
  require_positive_a(a, "parametric_point");
  if (shape.kind == Shape::gaussian) return parametric_point(f, a);
  return point_from_components(a, quad_components(f, shape, a));
}

OptimizeResult optimize_parameter(Family f, const WellShape& shape, double strength) {
  if (!(strength > 0.0))
    throw std::invalid_argument("optimize_parameter: strength must be positive");

  const auto route = component_route(f, shape);
  const auto stationarity = [&](double a) {
    const auto c = route.eval(a);
    return c.d_kinetic - strength * c.d_overlap;
  };

  // The minimizing a grows like sqrt(strength) for deep wells, so the scan
  // ceiling follows the strength.
  const double a_lo = 1e-4;
  const double a_hi = std::max(1e3, 4.0 * std::sqrt(strength));
  const auto brackets = scan_brackets_geometric(stationarity, a_lo, a_hi, 240);
  if (brackets.empty())
    throw numeric_error("optimize_parameter",
                        "no stationary point of " + to_string(f) + " in a in [" +
                            std::to_string(a_lo) + ", " + std::to_string(a_hi) +
                            "] at strength " + std::to_string(strength),
                        0.0, 0.0);

  OptimizeResult best{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& br : brackets) {
    const double a_root = refine_root(stationarity, br);
    const auto c = route.eval(a_root);
    const double w = c.kinetic - strength * c.overlap;
    if (w < best.energy) best = {a_root, w};
  }
  return best;
}

CriticalResult variational_critical(Family f) {
  if (family_traits(f).target_state != 1)
    throw no_threshold("variational_critical: even Gaussian families have no zero crossing");

  const auto energy_at = [&](double a) { return parametric_point(f, a).energy; };
  const auto brackets = scan_brackets_geometric(energy_at, 1e-3, 20.0, 400);
  if (brackets.empty())
    throw no_threshold("variational_critical: no positive root of the energy");

  const double a_c = refine_root(energy_at, brackets.front());
  const auto p = parametric_point(f, a_c);
  return {a_c, p.strength};
}

}  // namespace qwell
