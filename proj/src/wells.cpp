// SPDX-License-Identifier: Apache-2.0
#include "qwell/wells.hpp"

#include <cmath>
#include <stdexcept>

namespace qwell {

WellShape WellShape::square(double half_width) {
  if (!(half_width > 0.0))
    throw std::invalid_argument("WellShape::square: half_width must be positive");
  return WellShape{Shape::square, half_width};
}

double shape_value(const WellShape& shape, double x) {
  switch (shape.kind) {
    case Shape::gaussian:
      return std::exp(-x * x);
    case Shape::square:
      return std::fabs(x) <= shape.half_width ? 1.0 : 0.0;
  }
  throw std::logic_error("shape_value: unknown shape kind");
}

double potential_value(const Potential& pot, double x) {
  if (!(pot.strength > 0.0))
    throw std::invalid_argument("potential_value: strength must be positive");
  return -pot.strength * shape_value(pot.shape, x);
}

std::string to_string(Shape kind) {
  return kind == Shape::gaussian ? "gaussian" : "square";
}

}  // namespace qwell
