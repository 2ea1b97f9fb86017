// SPDX-License-Identifier: Apache-2.0
#include "qwell/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwell/errors.hpp"
#include "qwell/roots.hpp"
#include "qwell/trial.hpp"

namespace qwell {

namespace {

constexpr double kTailLengths = 12.0;  // alpha * L imposed on the decaying tail
constexpr double kRescale = 1e100;

double step_for(double strength) {
  return std::min(0.01, 1.0 / (20.0 * std::sqrt(2.0 * strength)));
}

double domain_for(double alpha) {
  return std::max(8.0, kTailLengths / alpha);
}

// One Numerov step for psi'' = g psi; c = h^2 / 12.
inline double numerov_step(double psi_prev, double g_prev, double psi_cur,
                           double g_cur, double g_next, double c) {
  return (2.0 * psi_cur * (1.0 + 5.0 * c * g_cur) - psi_prev * (1.0 - c * g_prev)) /
         (1.0 - c * g_next);
}

inline double slope_5pt(const std::array<double, 5>& psi, double h) {
  return (psi[0] - 8.0 * psi[1] + 8.0 * psi[3] - psi[4]) / (12.0 * h);
}

struct MatchEval {
  double mismatch = 0.0;  // log-derivative difference at the match point
  int nodes = 0;          // half-line interior sign changes, both sweeps
  double psi_out = 0.0;   // outward value at the match point
};

// Two-sided Numerov pass: outward with the parity start, inward seeded with
// the decaying tail, log-derivative mismatch at the matching index.
MatchEval numerov_match(const Potential& pot, int n, double energy, double h,
                        double domain) {
  const double c = h * h / 12.0;
  const auto g_at = [&](double x) {
    return 2.0 * (potential_value(pot, x) - energy);
  };

  const int last = std::max(8, static_cast<int>(std::lround(domain / h)));
  const double x_turn =
      std::sqrt(std::max(0.0, std::log(pot.strength / std::max(std::fabs(energy), 1e-300))));
  const int match =
      std::clamp(static_cast<int>(std::lround(x_turn / h)), 2, last - 3);

  MatchEval out;

  // Outward sweep to match+2.
  std::array<double, 5> stencil_out{};
  {
    double psi_prev, psi_cur;
    double g_prev = g_at(0.0), g_cur = g_at(h);
    if (n == 0) {
      psi_prev = 1.0;
      psi_cur = psi_prev * (1.0 + 5.0 * c * g_prev) / (1.0 - c * g_cur);
    } else {
      psi_prev = 0.0;
      psi_cur = h;
    }
    if (match - 2 <= 0) stencil_out[0] = psi_prev;
    if (match - 2 <= 1 && match + 2 >= 1) stencil_out[1 - (match - 2)] = psi_cur;
    for (int i = 1; i < match + 2; ++i) {
      const double g_next = g_at((i + 1) * h);
      const double psi_next = numerov_step(psi_prev, g_prev, psi_cur, g_cur, g_next, c);
      if (i >= 1 && psi_cur != 0.0 && psi_cur * psi_next < 0.0) ++out.nodes;
      psi_prev = psi_cur;
      psi_cur = psi_next;
      g_prev = g_cur;
      g_cur = g_next;
      const int idx = (i + 1) - (match - 2);
      if (idx >= 0 && idx < 5) stencil_out[static_cast<std::size_t>(idx)] = psi_cur;
    }
  }

  // Inward sweep from the tail down to match-2.
  std::array<double, 5> stencil_in{};
  {
    const double alpha = std::sqrt(std::max(2.0 * -energy, 1e-300));
    double psi_next = 1.0;                    // at index last
    double psi_cur = std::exp(alpha * h);     // at index last-1
    double g_next = g_at(last * h);
    double g_cur = g_at((last - 1) * h);
    if (last == match + 2) stencil_in[4] = psi_next;
    if (last - 1 <= match + 2) {
      const int idx = (last - 1) - (match - 2);
      if (idx >= 0 && idx < 5) stencil_in[static_cast<std::size_t>(idx)] = psi_cur;
    }
    for (int i = last - 1; i > match - 2; --i) {
      const double g_prev = g_at((i - 1) * h);
      double psi_prev = numerov_step(psi_next, g_next, psi_cur, g_cur, g_prev, c);
      if (psi_cur != 0.0 && psi_cur * psi_prev < 0.0) ++out.nodes;
      psi_next = psi_cur;
      psi_cur = psi_prev;
      g_next = g_cur;
      g_cur = g_prev;
      if (std::fabs(psi_cur) > kRescale) {
        const double s = 1.0 / kRescale;
        psi_cur *= s;
        psi_next *= s;
        for (double& v : stencil_in) v *= s;
      }
      const int idx = (i - 1) - (match - 2);
      if (idx >= 0 && idx < 5) stencil_in[static_cast<std::size_t>(idx)] = psi_cur;
    }
  }

  out.psi_out = stencil_out[2];
  const double d_out = slope_5pt(stencil_out, h);
  const double d_in = slope_5pt(stencil_in, h);
  if (stencil_out[2] == 0.0 || stencil_in[2] == 0.0) {
    out.mismatch = std::numeric_limits<double>::infinity();
    return out;
  }
  out.mismatch = d_out / stencil_out[2] - d_in / stencil_in[2];
  return out;
}

struct NumerovSolve {
  double energy;
  double residual;
  int half_nodes;
  double domain;
};

// Energy bisection: ascend from the well bottom to the first transition of
// the matching sign (node count guards against stepping past a pole).
NumerovSolve numerov_solve(const Potential& pot, int n, double h, double lmult) {
  const double v0 = pot.strength;
  const auto eval = [&](double e) {
    const double alpha = std::sqrt(std::max(2.0 * -e, 1e-300));
    return numerov_match(pot, n, e, h, lmult * domain_for(alpha));
  };

  const double bottom = -v0 * (1.0 - 1e-12);
  const double eps_min = 1e-13 * std::max(1.0, v0);
  const MatchEval base = eval(bottom);
  const double base_sign = base.mismatch;
  const auto transitioned = [&](const MatchEval& m) {
    return m.nodes >= 1 || !std::isfinite(m.mismatch) ||
           m.mismatch * base_sign < 0.0;
  };

  // Linear scan resolves the level spacing near the bottom; a geometric tail
  // in |e| reaches arbitrarily shallow states without huge-domain passes.
  double lo = bottom, hi = 0.0;
  bool found = false;
  const int n_lin = std::max(40, static_cast<int>(3.0 * std::sqrt(2.0 * v0)));
  const double lin_step = v0 / n_lin;
  double prev = bottom;
  for (int j = 1; j <= n_lin && !found; ++j) {
    const double e = -v0 + j * lin_step;
    if (e >= -lin_step) break;  // switch to the geometric tail
    if (transitioned(eval(e))) {
      lo = prev;
      hi = e;
      found = true;
    } else {
      prev = e;
    }
  }
  if (!found) {
    double mag = std::min(v0, lin_step);
    while (mag > eps_min && !found) {
      const double e = -mag;
      if (transitioned(eval(e))) {
        lo = prev;
        hi = e;
        found = true;
      } else {
        prev = e;
        mag *= 0.5;
      }
    }
  }
  if (!found)
    throw no_bound_state("numerov_eigen: no state " + std::to_string(n) +
                         " found below zero energy at strength " + std::to_string(v0));

  while (hi - lo > std::max(1e-13, 1e-13 * std::fabs(0.5 * (lo + hi)))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (transitioned(eval(mid)) ? hi : lo) = mid;
  }

  const double e_star = 0.5 * (lo + hi);
  const MatchEval fin = eval(e_star);
  const double alpha = std::sqrt(std::max(2.0 * -e_star, 1e-300));
  return {e_star, std::fabs(fin.mismatch), fin.nodes, lmult * domain_for(alpha)};
}

// Zero-energy odd solution: the state exists once the large-x slope turns
// negative (or a node has already formed).
bool odd_state_exists(const Potential& pot) {
  const bool square = pot.shape.kind == Shape::square;
  const double hw = pot.shape.half_width;
  double h = 0.002;
  // Keep the square edge on the grid and give the jump its midpoint value,
  // otherwise the discrete well is effectively half a step wider.
  if (square) h = hw / std::ceil(hw / h);
  const double far = square ? 3.0 * hw + 6.0 : 12.0;
  const int last = static_cast<int>(std::lround(far / h));
  const double c = h * h / 12.0;
  const auto g_at = [&](double x) {
    double v = potential_value(pot, x);
    if (square && std::fabs(std::fabs(x) - hw) < 0.5 * h) v = -0.5 * pot.strength;
    return 2.0 * v;
  };

  double psi_prev = 0.0, psi_cur = h;
  double g_prev = g_at(0.0), g_cur = g_at(h);
  int nodes = 0;
  std::array<double, 5> tail{};
  for (int i = 1; i < last; ++i) {
    const double g_next = g_at((i + 1) * h);
    const double psi_next = numerov_step(psi_prev, g_prev, psi_cur, g_cur, g_next, c);
    if (psi_cur != 0.0 && psi_cur * psi_next < 0.0) ++nodes;
    psi_prev = psi_cur;
    psi_cur = psi_next;
    g_prev = g_cur;
    g_cur = g_next;
    const int idx = (i + 1) - (last - 4);
    if (idx >= 0 && idx < 5) tail[static_cast<std::size_t>(idx)] = psi_cur;
  }
  if (nodes >= 1) return true;
  return slope_5pt(tail, h) < 0.0;
}

// 3x3 (or smaller) normal-equation solve in extended precision.
struct SmallLsq {
  std::vector<double> coeff;
  std::vector<double> std_err;
  double condition;
};

SmallLsq solve_lsq(const std::vector<std::vector<double>>& X,
                   const std::vector<double>& y) {
  const int m = static_cast<int>(X.size());
  const int p = static_cast<int>(X[0].size());
  std::vector<std::vector<long double>> A(p, std::vector<long double>(p, 0.0L));
  std::vector<long double> b(p, 0.0L);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < p; ++j) {
      b[j] += static_cast<long double>(X[i][j]) * y[i];
      for (int k = 0; k <= j; ++k)
        A[j][k] += static_cast<long double>(X[i][j]) * X[i][k];
    }
  }
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) A[j][k] = A[k][j];

  // Invert A by Gauss-Jordan with partial pivoting.
  std::vector<std::vector<long double>> inv(p, std::vector<long double>(p, 0.0L));
  for (int i = 0; i < p; ++i) inv[i][i] = 1.0L;
  auto work = A;
  long double norm_a = 0.0L;
  for (int i = 0; i < p; ++i) {
    long double row = 0.0L;
    for (int j = 0; j < p; ++j) row += fabsl(A[i][j]);
    norm_a = std::max(norm_a, row);
  }
  for (int col = 0; col < p; ++col) {
    int piv = col;
    for (int r = col + 1; r < p; ++r)
      if (fabsl(work[r][col]) > fabsl(work[piv][col])) piv = r;
    std::swap(work[col], work[piv]);
    std::swap(inv[col], inv[piv]);
    if (work[col][col] == 0.0L)
      throw numeric_error("shallow_fit_oracle", "singular normal equations");
    const long double d = work[col][col];
    for (int j = 0; j < p; ++j) {
      work[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < p; ++r) {
      if (r == col) continue;
      const long double f = work[r][col];
      if (f == 0.0L) continue;
      for (int j = 0; j < p; ++j) {
        work[r][j] -= f * work[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  long double norm_inv = 0.0L;
  for (int i = 0; i < p; ++i) {
    long double row = 0.0L;
    for (int j = 0; j < p; ++j) row += fabsl(inv[i][j]);
    norm_inv = std::max(norm_inv, row);
  }

  std::vector<long double> c(p, 0.0L);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) c[i] += inv[i][j] * b[j];

  long double rss = 0.0L;
  for (int i = 0; i < m; ++i) {
    long double r = y[i];
    for (int j = 0; j < p; ++j) r -= c[j] * X[i][j];
    rss += r * r;
  }
  const long double sigma2 = m > p ? rss / (m - p) : 0.0L;

  SmallLsq out;
  out.condition = static_cast<double>(norm_a * norm_inv);
  for (int j = 0; j < p; ++j) {
    out.coeff.push_back(static_cast<double>(c[j]));
    out.std_err.push_back(static_cast<double>(sqrtl(std::max(0.0L, sigma2 * inv[j][j]))));
  }
  return out;
}

BoundStateResult exact_energy(const WellShape& shape, double strength, int n);

}  // namespace

bool bound_state_exists(const Potential& pot, int n) {
  if (n == 0) return true;  // a 1D attractive well always binds the even state
  if (n != 1) throw std::invalid_argument("bound_state_exists: n must be 0 or 1");
  return odd_state_exists(pot);
}

BoundStateResult numerov_eigen(const Potential& pot, int n, double domain_multiplier) {
  if (n != 0 && n != 1)
    throw std::invalid_argument("numerov_eigen: n must be 0 or 1");
  if (!(pot.strength > 0.0))
    throw std::invalid_argument("numerov_eigen: strength must be positive");
  if (!(domain_multiplier >= 1.0))
    throw std::invalid_argument("numerov_eigen: domain multiplier must be >= 1");
  if (pot.shape.kind != Shape::gaussian)
    throw std::invalid_argument("numerov_eigen: Gaussian wells only");
  if (n == 1 && !bound_state_exists(pot, 1))
    throw no_bound_state("numerov_eigen: state 1 below threshold at strength " +
                         std::to_string(pot.strength));

  const double h = step_for(pot.strength);

  // Doubling-L stability: the reported energy must be tail-converged.
  NumerovSolve cur = numerov_solve(pot, n, h, domain_multiplier);
  double lmult = domain_multiplier;
  for (int round = 0;; ++round) {
    const NumerovSolve wide = numerov_solve(pot, n, h, 2.0 * lmult);
    if (std::fabs(wide.energy - cur.energy) <= 1e-9) break;
    if (round >= 3)
      throw numeric_error("numerov_eigen", "energy not stable under domain doubling",
                          wide.energy, std::fabs(wide.energy - cur.energy));
    cur = wide;
    lmult *= 2.0;
  }

  if (cur.half_nodes != 0)
    throw numeric_error("numerov_eigen", "unexpected node count", cur.energy,
                        static_cast<double>(cur.half_nodes));

  BoundStateResult r;
  r.n = n;
  r.energy = cur.energy;
  r.decay_rate = std::sqrt(-2.0 * cur.energy);
  r.solver = SolverKind::numerov;
  r.diag = {h, cur.domain, cur.residual, 2 * cur.half_nodes + (n == 1 ? 1 : 0)};
  return r;
}

double diag_eigen_raw(const Potential& pot, int n, double half_length, double step) {
  // Interior grid of the Dirichlet problem on [-L, L].
  const int half = std::max(4, static_cast<int>(std::lround(half_length / step)));
  const int size = 2 * half - 1;
  const double inv_h2 = 1.0 / (step * step);
  std::vector<double> diag(static_cast<std::size_t>(size));
  const bool square = pot.shape.kind == Shape::square;
  const double hw = pot.shape.half_width;
  for (int i = 0; i < size; ++i) {
    const double x = (i - (half - 1)) * step;
    double v = potential_value(pot, x);
    // Potential jump sitting on a grid point takes the midpoint value.
    if (square && std::fabs(std::fabs(x) - hw) < 1e-9 * step) v = -0.5 * pot.strength;
    diag[static_cast<std::size_t>(i)] = inv_h2 + v;
  }
  const double off = -0.5 * inv_h2;
  const double off2 = off * off;

  const auto count_below = [&](double x) {
    int cnt = 0;
    double q = 1.0;
    for (int i = 0; i < size; ++i) {
      q = diag[static_cast<std::size_t>(i)] - x - (i > 0 ? off2 / q : 0.0);
      if (q == 0.0) q = -1e-280;
      if (q < 0.0) ++cnt;
    }
    return cnt;
  };

  double lo = -pot.strength - 1.0;
  double hi = 2.0 * inv_h2 + 1.0;
  for (int it = 0; it < 120 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (count_below(mid) >= n + 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundStateResult diag_eigen(const Potential& pot, int n) {
  if (n != 0 && n != 1)
    throw std::invalid_argument("diag_eigen: n must be 0 or 1");
  if (!(pot.strength > 0.0))
    throw std::invalid_argument("diag_eigen: strength must be positive");
  if (n == 1 && !bound_state_exists(pot, 1))
    throw no_bound_state("diag_eigen: state 1 below threshold at strength " +
                         std::to_string(pot.strength));

  double h = step_for(pot.strength);
  if (pot.shape.kind == Shape::square) {
    // Keep the well edge on the grid so step-halving stays aligned.
    h = pot.shape.half_width / std::ceil(pot.shape.half_width / h);
  }

  double domain = 16.0;
  double e_rich = 0.0, gap = 0.0;
  for (int round = 0; round < 8; ++round) {
    const double e1 = diag_eigen_raw(pot, n, domain, h);
    const double e2 = diag_eigen_raw(pot, n, domain, 0.5 * h);
    e_rich = (4.0 * e2 - e1) / 3.0;
    gap = std::fabs(e2 - e1);
    if (e_rich >= -1e-12 * std::max(1.0, pot.strength))
      throw no_bound_state("diag_eigen: no negative eigenvalue for state " +
                           std::to_string(n));
    const double needed = domain_for(std::sqrt(-2.0 * e_rich));
    if (domain >= needed) break;
    domain = 1.1 * needed;
  }

  BoundStateResult r;
  r.n = n;
  r.energy = e_rich;
  r.decay_rate = std::sqrt(-2.0 * e_rich);
  r.solver = SolverKind::diagonalization;
  r.diag = {h, domain, gap, n};
  return r;
}

double critical_strength_exact(const WellShape& shape, int n) {
  if (n != 1)
    throw no_threshold("critical_strength_exact: only state 1 has a threshold");
  const auto exists = [&](double strength) {
    return bound_state_exists(Potential{shape, strength}, 1);
  };
  return bisect_predicate(exists, 0.05, 20.0, 1e-6);
}

BoundStateResult square_transcendental(double strength, int n) {
  if (!(strength > 0.0))
    throw std::invalid_argument("square_transcendental: strength must be positive");
  if (n != 0 && n != 1)
    throw std::invalid_argument("square_transcendental: n must be 0 or 1");

  const double cap = std::sqrt(2.0 * strength);  // wavenumber at zero energy
  constexpr double half_pi = std::numbers::pi / 2.0;

  double k_lo, k_hi;
  std::function<double(double)> fn;
  if (n == 0) {
    fn = [cap](double k) { return k * std::tan(k) - std::sqrt(cap * cap - k * k); };
    k_lo = 1e-9 * std::min(cap, 1.0);
    k_hi = std::min(cap, half_pi * (1.0 - 1e-12));
  } else {
    if (cap <= half_pi * (1.0 + 1e-15))
      throw no_bound_state(
          "square_transcendental: state 1 requires strength > pi^2/8");
    fn = [cap](double k) { return -k / std::tan(k) - std::sqrt(cap * cap - k * k); };
    k_lo = half_pi * (1.0 + 1e-12);
    k_hi = std::min(cap * (1.0 - 1e-15), std::numbers::pi * (1.0 - 1e-12));
  }

  const double f_lo = fn(k_lo), f_hi = fn(k_hi);
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw numeric_error("square_transcendental", "matching branch not bracketed",
                        0.5 * (k_lo + k_hi));
  const double k = refine_root(fn, {k_lo, k_hi, f_lo, f_hi});

  BoundStateResult r;
  r.n = n;
  r.energy = 0.5 * k * k - strength;
  r.decay_rate = std::sqrt(std::max(0.0, cap * cap - k * k));
  r.solver = SolverKind::transcendental;
  r.diag = {0.0, 1.0, std::fabs(fn(k)), n};
  return r;
}

CrossingResult crossing_point(int state) {
  if (state != 0 && state != 1)
    throw std::invalid_argument("crossing_point: state must be 0 or 1");
  const Family fam_h = state == 0 ? Family::harmonic_even : Family::harmonic_odd;
  const Family fam_e = state == 0 ? Family::exponential_even : Family::exponential_odd;
  const WellShape gauss = WellShape::gaussian();

  const auto difference = [&](double strength) {
    return optimize_parameter(fam_e, gauss, strength).energy -
           optimize_parameter(fam_h, gauss, strength).energy;
  };

  // Both odd families need a stationary point, hence the higher floor.
  const double lo = state == 0 ? 0.3 : 1.8;
  const auto brackets = scan_brackets_geometric(difference, lo, 8.0, 60);
  if (brackets.empty())
    throw numeric_error("crossing_point", "no sign change of the energy difference",
                        0.0);
  const auto& br = brackets.front();
  const double v_c = refine_root(difference, br);

  // Tight verified bracket around the refined crossing.
  double w = std::max(1e-7, 1e-12 * v_c);
  double b_lo = v_c - w, b_hi = v_c + w;
  while (difference(b_lo) * difference(b_hi) > 0.0 && w < 1e-2) {
    w *= 4.0;
    b_lo = v_c - w;
    b_hi = v_c + w;
  }
  return {state, v_c, b_lo, b_hi};
}

namespace {
BoundStateResult exact_energy(const WellShape& shape, double strength, int n) {
  if (shape.kind == Shape::gaussian) return numerov_eigen(Potential{shape, strength}, n);
  return square_transcendental(strength, n);
}
}  // namespace

ShallowFit shallow_fit_oracle(const WellShape& shape, int n, int degree) {
  if (n != 0)
    throw std::invalid_argument("shallow_fit_oracle: only the ground state");
  if (degree != 2 && degree != 3)
    throw std::invalid_argument("shallow_fit_oracle: degree must be 2 or 3");

  // Grid and scaling chosen to resolve the weak-binding tail; one nuisance
  // power above `degree` absorbs the next-order contamination.
  constexpr int kPoints = 12;
  constexpr double kLo = 0.01, kHi = 0.05;
  const std::vector<int> powers = degree == 2 ? std::vector<int>{2, 3}
                                              : std::vector<int>{2, 3, 4};

  std::vector<std::vector<double>> X;
  std::vector<double> y;
  const double ratio = std::pow(kHi / kLo, 1.0 / (kPoints - 1));
  for (int i = 0; i < kPoints; ++i) {
    const double v0 = kLo * std::pow(ratio, i);
    const double t = v0 / kHi;
    std::vector<double> row;
    for (int p : powers) row.push_back(std::pow(t, p));
    X.push_back(std::move(row));
    y.push_back(exact_energy(shape, v0, n).energy);
  }

  SmallLsq lsq = solve_lsq(X, y);
  if (lsq.condition > 1e14)
    throw numeric_error("shallow_fit_oracle", "normal equations ill-conditioned",
                        lsq.coeff.empty() ? 0.0 : lsq.coeff[0], lsq.condition);

  ShallowFit fit;
  fit.degree = degree;
  fit.condition = lsq.condition;
  // Un-scale and drop the nuisance term.
  const int reported = degree - 1;  // c2..c_degree
  for (int j = 0; j < reported; ++j) {
    const double unscale = std::pow(kHi, powers[static_cast<std::size_t>(j)]);
    fit.coeff.push_back(lsq.coeff[static_cast<std::size_t>(j)] / unscale);
    fit.std_err.push_back(lsq.std_err[static_cast<std::size_t>(j)] / unscale);
  }
  return fit;
}

}  // namespace qwell
