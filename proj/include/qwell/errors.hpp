// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qwell {

// An iterative routine failed to reach its tolerance. Carries the best
// estimate reached and the residual at that point.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& where, const std::string& what,
                double estimate = 0.0, double residual = 0.0)
      : std::runtime_error(where + ": " + what),
        estimate_(estimate),
        residual_(residual) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }

 private:
  double estimate_;
  double residual_;
};

// The requested bound state does not exist at the given well strength.
class no_bound_state : public std::domain_error {
  using std::domain_error::domain_error;
};

// The requested state has no finite-strength threshold for this shape.
class no_threshold : public std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace qwell
