// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "qwell/series.hpp"
#include "qwell/trial.hpp"
#include "qwell/wells.hpp"

namespace qwell {

// Internal expansion variable of the shallow pipeline: the harmonic closed
// forms have a square-root branch at a = 0, so they expand in u = sqrt(a);
// the exponential ones expand in u = a directly.
enum class ShallowVariable { sqrt_a, a };

struct ShallowSeries {
  std::optional<Family> family;  // nullopt: stored exact reference
  Shape shape = Shape::gaussian;
  ShallowVariable variable = ShallowVariable::a;
  Series strength_of_u;  // pipeline trace: strength as a series in u
  Series u_of_strength;  // reverted series
  Series energy_of_u;    // energy as a series in u
  Series energy;         // the deliverable: energy as a series in strength
};

// Three-step pipeline: expand the closed parametric forms in u, revert the
// strength series, compose. Ground-state families only.
ShallowSeries shallow_expansion(Family f, int order);
ShallowSeries shallow_expansion(Family f, int order, const WellShape& shape);

// Stored exact Gaussian ground-state expansion (constants, not derived).
ShallowSeries reference_exact_shallow();

// Deep-well energy behaviour W ~ A*strength + B*sqrt(strength) + C.
struct DeepExpansion {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct DeepFit {
  Family family;
  DeepExpansion analytic;  // closed-form coefficients (the product)
  DeepExpansion fitted;    // sequential-limit extraction (the test)
  double a1_analytic = 0.0, a2_analytic = 0.0;  // parameter ansatz trace
  double a1_fitted = 0.0, a2_fitted = 0.0;
  std::vector<double> ladder;     // strengths used by the fit
  std::vector<double> residuals;  // |W - (A v + B sqrt(v) + C)| on the ladder
};

// Numeric verification of the deep expansion on a geometric strength ladder,
// one coefficient at a time (subtract the established leading terms, take
// the limit of the residual by Richardson extrapolation).
DeepFit deep_expansion_fit(Family f);

// Exact deep expansion for oscillator quantum number n.
DeepExpansion reference_exact_deep(int n);

}  // namespace qwell
