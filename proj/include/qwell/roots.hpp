// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace qwell {

struct Bracket {
  double lo = 0.0, hi = 0.0;
  double f_lo = 0.0, f_hi = 0.0;
};

// Sign changes of fn on a geometric grid over [lo, hi] (lo > 0).
std::vector<Bracket> scan_brackets_geometric(
    const std::function<double(double)>& fn, double lo, double hi, int points);

// TOMS 748 refinement of a bracketed root to near machine precision.
double refine_root(const std::function<double(double)>& fn, const Bracket& br);

// Bisection on a boolean predicate: pred(lo) == false, pred(hi) == true.
// Returns the transition point to the requested absolute width.
double bisect_predicate(const std::function<bool(double)>& pred, double lo,
                        double hi, double width);

}  // namespace qwell
