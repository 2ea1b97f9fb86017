// SPDX-License-Identifier: Apache-2.0
#include "qwell/roots.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <stdexcept>

#include "qwell/errors.hpp"

namespace qwell {

std::vector<Bracket> scan_brackets_geometric(
    const std::function<double(double)>& fn, double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw std::invalid_argument("scan_brackets_geometric: bad scan range");
  std::vector<Bracket> out;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double x_prev = lo;
  double f_prev = fn(lo);
  for (int i = 1; i < points; ++i) {
    const double x = (i == points - 1) ? hi : lo * std::pow(ratio, i);
    const double f = fn(x);
    if (f_prev == 0.0)
      out.push_back({x_prev, x_prev, 0.0, 0.0});
    else if (std::isfinite(f_prev) && std::isfinite(f) && f_prev * f < 0.0)
      out.push_back({x_prev, x, f_prev, f});
    x_prev = x;
    f_prev = f;
  }
  if (f_prev == 0.0) out.push_back({x_prev, x_prev, 0.0, 0.0});
  return out;
}

double refine_root(const std::function<double(double)>& fn, const Bracket& br) {
  if (br.lo == br.hi) return br.lo;  // exact hit during the scan
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t max_iter = 200;
  const auto r =
      boost::math::tools::toms748_solve(fn, br.lo, br.hi, br.f_lo, br.f_hi, tol, max_iter);
  if (max_iter >= 200)
    throw numeric_error("refine_root", "toms748 did not converge",
                        0.5 * (r.first + r.second), r.second - r.first);
  return 0.5 * (r.first + r.second);
}

double bisect_predicate(const std::function<bool(double)>& pred, double lo,
                        double hi, double width) {
  if (!(hi > lo) || !(width > 0.0))
    throw std::invalid_argument("bisect_predicate: bad interval");
  if (pred(lo) || !pred(hi))
    throw numeric_error("bisect_predicate", "predicate does not bracket a transition",
                        0.5 * (lo + hi), hi - lo);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // width below representable spacing
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qwell
