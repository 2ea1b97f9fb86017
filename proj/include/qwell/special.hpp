// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qwell::special {

double erf(double x);
double erfc(double x);

// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
// Stays finite and fully accurate where the naive product would overflow
// or lose digits (large x).
double erfcx(double x);
long double erfcx_l(long double x);

}  // namespace qwell::special
