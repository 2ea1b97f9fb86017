// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qwell/wells.hpp"

namespace qwell {

// The four one-parameter trial families. Harmonic families live on the full
// line; exponential families are built on the half line x > 0 with the parity
// boundary condition at the origin.
enum class Family {
  harmonic_even,      // exp(-a x^2), ground state
  harmonic_odd,       // x exp(-a x^2), first excited state
  exponential_even,   // (1 + a x) exp(-a x), ground state, phi'(0) = 0
  exponential_odd,    // x exp(-a x), first excited state, phi(0) = 0
};

enum class Parity { even, odd };
enum class Support { full_line, half_line };

struct FamilyTraits {
  Parity parity;
  int target_state;  // 0 or 1
  Support support;
};

FamilyTraits family_traits(Family f);
std::string to_string(Family f);

// Unnormalized trial value. a > 0; half-line families require x >= 0.
double trial_value(Family f, double a, double x);

// Rayleigh-quotient pieces of W(a) = kinetic - strength * overlap, together
// with their derivatives in the variational parameter:
//   kinetic = <phi'|phi'> / (2 <phi|phi>)
//   overlap = <phi|f|phi> / <phi|phi>
struct VariationalComponents {
  double kinetic = 0.0;
  double overlap = 0.0;
  double d_kinetic = 0.0;
  double d_overlap = 0.0;
};

// Closed forms; Gaussian shape only.
VariationalComponents closed_components(Family f, double a);

// Adaptive-quadrature ground truth for any shape. Derivative components use
// analytically differentiated integrands under the same quadrature.
VariationalComponents quad_components(Family f, const WellShape& shape, double a,
                                      double rel_tol = 1e-12);

// One point of the parametric variational curve: the strength at which `a`
// is stationary, and the energy there.
struct ParametricPoint {
  double a = 0.0;
  double strength = 0.0;
  double energy = 0.0;
};

ParametricPoint parametric_point(Family f, double a);
ParametricPoint parametric_point(Family f, const WellShape& shape, double a);

struct OptimizeResult {
  double a_opt = 0.0;
  double energy = 0.0;
};

// Positive stationary point of W(a) at fixed strength with the lowest energy.
OptimizeResult optimize_parameter(Family f, const WellShape& shape, double strength);

struct CriticalResult {
  double a_c = 0.0;
  double strength_c = 0.0;
};

// Parameter and strength at which the variational energy crosses zero
// (odd families; even Gaussian families have no threshold).
CriticalResult variational_critical(Family f);

}  // namespace qwell
