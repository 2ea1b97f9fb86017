// SPDX-License-Identifier: Apache-2.0
#include "qwell/special.hpp"

#include <cmath>
#include <stdexcept>

#include "qwell/errors.hpp"

namespace qwell::special {

namespace {
constexpr long double kSqrtPi = 1.7724538509055160272981674833411452L;

// Continued fraction for the upper incomplete gamma Gamma(1/2, x^2),
// evaluated with the modified Lentz scheme. Converges quickly once
// x^2 is a few units; we only call it for x >= 4.
long double erfcx_cf(long double x) {
  const long double tiny = 1e-300L;
  long double b = x * x + 0.5L;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i <= 400; ++i) {
    const long double an = -static_cast<long double>(i) * (i - 0.5L);
    b += 2.0L;
    d = an * d + b;
    if (fabsl(d) < tiny) d = tiny;
    c = b + an / c;
    if (fabsl(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (fabsl(delta - 1.0L) < 1e-21L) return x * h / kSqrtPi;
  }
  throw numeric_error("special::erfcx", "continued fraction did not converge",
                      static_cast<double>(x * h / kSqrtPi));
}
}  // namespace

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

long double erfcx_l(long double x) {
  if (x < 0.0L)
    throw std::domain_error("special::erfcx: argument must be non-negative");
  if (x < 4.0L) return expl(x * x) * erfcl(x);
  return erfcx_cf(x);
}

double erfcx(double x) { return static_cast<double>(erfcx_l(x)); }

}  // namespace qwell::special
