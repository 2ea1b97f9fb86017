// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace qwell {

enum class Shape { gaussian, square };

// Well profile f(x): even, f(0) = 1 is the maximum, f -> 0 at infinity.
// The square profile is an indicator on [-half_width, half_width].
struct WellShape {
  Shape kind = Shape::gaussian;
  double half_width = 1.0;  // square only

  static WellShape gaussian() { return WellShape{Shape::gaussian, 1.0}; }
  static WellShape square(double half_width = 1.0);
};

double shape_value(const WellShape& shape, double x);

// Attractive single well v(x) = -strength * f(x), strength > 0.
struct Potential {
  WellShape shape;
  double strength = 1.0;
};

double potential_value(const Potential& pot, double x);

std::string to_string(Shape kind);

}  // namespace qwell
