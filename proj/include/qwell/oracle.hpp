// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qwell/wells.hpp"

namespace qwell {

enum class SolverKind { numerov, diagonalization, transcendental };

struct SolverDiagnostics {
  double grid_step = 0.0;
  double half_length = 0.0;
  double residual = 0.0;
  int nodes = 0;  // interior sign changes of the eigenfunction, full line
};

struct BoundStateResult {
  int n = 0;
  double energy = 0.0;      // < 0
  double decay_rate = 0.0;  // sqrt(-2 energy)
  SolverKind solver = SolverKind::numerov;
  SolverDiagnostics diag;
};

// Does the n-th bound state exist at this strength? (zero-energy slope test)
bool bound_state_exists(const Potential& pot, int n);

// Numerov shooting with parity start conditions, decaying-tail matching and
// node-guided bisection in the energy. The domain multiplier scales the
// adaptive half-length (tail-stability studies); every solve is additionally
// checked against a doubled domain before it is reported.
BoundStateResult numerov_eigen(const Potential& pot, int n,
                               double domain_multiplier = 1.0);

// Finite-difference tridiagonal Hamiltonian on [-L, L]; Sturm-sequence
// bisection for the n-th eigenvalue, Richardson-extrapolated in the step.
BoundStateResult diag_eigen(const Potential& pot, int n);

// Single unextrapolated finite-difference solve (step-convergence studies).
double diag_eigen_raw(const Potential& pot, int n, double half_length, double step);

// Strength at which the n-th bound state appears (n = 1; the even ground
// state has no threshold on the full line).
double critical_strength_exact(const WellShape& shape, int n);

// Exact finite square well of half-width 1: even states k tan k = alpha,
// odd states -k cot k = alpha, k = sqrt(2(strength + energy)).
BoundStateResult square_transcendental(double strength, int n);

struct CrossingResult {
  int state = 0;
  double v_c = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket of the sign change
};

// Strength at which the optimized exponential and harmonic variational
// energies cross for the given state.
CrossingResult crossing_point(int state);

struct ShallowFit {
  std::vector<double> coeff;    // c2 .. c_degree of energy ~ sum c_k strength^k
  std::vector<double> std_err;  // matching least-squares standard errors
  int degree = 2;
  double condition = 0.0;
};

// Least-squares fit of oracle energies over a small-strength grid; a nuisance
// term one power above `degree` absorbs higher-order contamination.
ShallowFit shallow_fit_oracle(const WellShape& shape, int n, int degree);

}  // namespace qwell
