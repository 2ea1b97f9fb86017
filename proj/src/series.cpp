// SPDX-License-Identifier: Apache-2.0
#include "qwell/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwell {

namespace {

// Compensated (Kahan) accumulator for the convolution loops, so degree-10
// pipeline coefficients survive in plain doubles.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

std::vector<double> mul_at(const std::vector<double>& a,
                           const std::vector<double>& b, int order) {
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  const int na = static_cast<int>(a.size()) - 1;
  for (int n = 0; n <= order; ++n) {
    Kahan acc;
    const int jmax = std::min(n, na);
    for (int j = 0; j <= jmax; ++j) {
      const int k = n - j;
      if (k < static_cast<int>(b.size())) acc.add(a[j] * b[k]);
    }
    out[n] = acc.sum;
  }
  return out;
}

std::vector<double> recip_at(const std::vector<double>& s, int order) {
  if (s.empty() || s[0] == 0.0)
    throw std::domain_error("Series::reciprocal: zero constant term");
  std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
  r[0] = 1.0 / s[0];
  for (int n = 1; n <= order; ++n) {
    Kahan acc;
    for (int k = 1; k <= n; ++k) {
      const double sk = k < static_cast<int>(s.size()) ? s[k] : 0.0;
      acc.add(sk * r[n - k]);
    }
    r[n] = -acc.sum / s[0];
  }
  return r;
}

// Horner composition at a fixed working order; operands are implicitly
// zero-extended, which is only valid internally where the tails are known.
std::vector<double> compose_at(const std::vector<double>& outer,
                               const std::vector<double>& inner, int order) {
  std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
  const int top = std::min<int>(order, static_cast<int>(outer.size()) - 1);
  r[0] = outer[top];
  for (int k = top - 1; k >= 0; --k) {
    r = mul_at(r, inner, order);
    r[0] += outer[k];
  }
  return r;
}

}  // namespace

Series::Series(int order) {
  if (order < 0) throw std::invalid_argument("Series: negative order");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Series::Series(std::initializer_list<double> coeffs) {
  if (coeffs.size() == 0)
    throw std::invalid_argument("Series: empty coefficient list");
  coeffs_.assign(coeffs);
}

Series Series::constant(double value, int order) {
  Series s(order);
  s.coeffs_[0] = value;
  return s;
}

Series Series::identity(int order) {
  if (order < 1) throw std::invalid_argument("Series::identity: order < 1");
  Series s(order);
  s.coeffs_[1] = 1.0;
  return s;
}

double Series::operator[](int k) const {
  if (k < 0) throw std::out_of_range("Series: negative index");
  return k <= order() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
}

void Series::set(int k, double value) {
  if (k < 0 || k > order()) throw std::out_of_range("Series::set: bad index");
  coeffs_[static_cast<std::size_t>(k)] = value;
}

Series Series::truncated(int new_order) const {
  if (new_order < 0) throw std::invalid_argument("Series::truncated");
  Series s(std::min(new_order, order()));
  std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
  return s;
}

Series Series::padded(int new_order) const {
  if (new_order < order()) return truncated(new_order);
  Series s(new_order);
  std::copy(coeffs_.begin(), coeffs_.end(), s.coeffs_.begin());
  return s;
}

double Series::eval(double x) const {
  double r = 0.0;
  for (int k = order(); k >= 0; --k) r = r * x + coeffs_[static_cast<std::size_t>(k)];
  return r;
}

Series Series::operator+(const Series& rhs) const {
  Series out(std::min(order(), rhs.order()));
  for (int k = 0; k <= out.order(); ++k)
    out.coeffs_[static_cast<std::size_t>(k)] = (*this)[k] + rhs[k];
  return out;
}

Series Series::operator-(const Series& rhs) const {
  Series out(std::min(order(), rhs.order()));
  for (int k = 0; k <= out.order(); ++k)
    out.coeffs_[static_cast<std::size_t>(k)] = (*this)[k] - rhs[k];
  return out;
}

Series Series::operator*(const Series& rhs) const {
  const int n = std::min(order(), rhs.order());
  Series out(n);
  out.coeffs_ = mul_at(coeffs_, rhs.coeffs_, n);
  return out;
}

Series Series::scaled(double factor) const {
  Series out = *this;
  for (double& c : out.coeffs_) c *= factor;
  return out;
}

Series Series::derivative() const {
  if (order() == 0) return Series(0);
  Series out(order() - 1);
  for (int k = 1; k <= order(); ++k)
    out.coeffs_[static_cast<std::size_t>(k - 1)] = k * coeffs_[static_cast<std::size_t>(k)];
  return out;
}

Series Series::antiderivative() const {
  Series out(order() + 1);
  for (int k = 0; k <= order(); ++k)
    out.coeffs_[static_cast<std::size_t>(k + 1)] = coeffs_[static_cast<std::size_t>(k)] / (k + 1);
  return out;
}

Series Series::reciprocal() const {
  Series out(order());
  out.coeffs_ = recip_at(coeffs_, order());
  return out;
}

Series compose(const Series& outer, const Series& inner) {
  if (inner[0] != 0.0)
    throw std::domain_error("compose: inner series has nonzero constant term");
  const int n = std::min(outer.order(), inner.order());
  Series out(n);
  Series in = inner.truncated(n);
  std::vector<double> ov(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> iv(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    ov[static_cast<std::size_t>(k)] = outer[k];
    iv[static_cast<std::size_t>(k)] = in[k];
  }
  const std::vector<double> rv = compose_at(ov, iv, n);
  for (int k = 0; k <= n; ++k) out.set(k, rv[static_cast<std::size_t>(k)]);
  return out;
}

Series revert(const Series& s) {
  if (s[0] != 0.0)
    throw std::domain_error("revert: series has nonzero constant term");
  if (s[1] == 0.0)
    throw std::domain_error("revert: series has zero linear term");
  const int n = s.order();

  std::vector<double> sv(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) sv[static_cast<std::size_t>(k)] = s[k];
  std::vector<double> sd(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) sd[static_cast<std::size_t>(k - 1)] = k * sv[static_cast<std::size_t>(k)];

  // Newton iteration on s(t) - x = 0; the seed is right to first order and
  // the number of correct orders doubles each pass.
  std::vector<double> t(static_cast<std::size_t>(n) + 1, 0.0);
  t[1] = 1.0 / s[1];
  std::vector<double> id(static_cast<std::size_t>(n) + 1, 0.0);
  if (n >= 1) id[1] = 1.0;

  int passes = 2;
  for (int m = 1; m < n; m *= 2) ++passes;
  for (int it = 0; it < passes; ++it) {
    std::vector<double> e = compose_at(sv, t, n);
    for (int k = 0; k <= n; ++k) e[static_cast<std::size_t>(k)] -= id[static_cast<std::size_t>(k)];
    const std::vector<double> slope = compose_at(sd, t, n);
    const std::vector<double> corr = mul_at(e, recip_at(slope, n), n);
    for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] -= corr[static_cast<std::size_t>(k)];
  }

  Series out(n);
  for (int k = 0; k <= n; ++k) out.set(k, t[static_cast<std::size_t>(k)]);
  return out;
}

Series maclaurin(MaclaurinFn fn, int order) {
  if (order < 0) throw std::invalid_argument("maclaurin: negative order");
  Series s(order);
  switch (fn) {
    case MaclaurinFn::exp: {
      double c = 1.0;
      s.set(0, 1.0);
      for (int k = 1; k <= order; ++k) {
        c /= k;
        s.set(k, c);
      }
      return s;
    }
    case MaclaurinFn::erf: {
      // (2/sqrt(pi)) * (-1)^k / (k! (2k+1)) at odd degrees, 0 at even.
      double term = 2.0 / std::sqrt(std::numbers::pi);
      for (int k = 0; 2 * k + 1 <= order; ++k) {
        if (k > 0) term *= -(2.0 * k - 1.0) / (k * (2.0 * k + 1.0));
        s.set(2 * k + 1, term);
      }
      return s;
    }
  }
  throw std::logic_error("maclaurin: unknown function");
}

Series binomial(double exponent, int order) {
  if (order < 0) throw std::invalid_argument("binomial: negative order");
  Series s(order);
  double c = 1.0;
  s.set(0, 1.0);
  for (int k = 1; k <= order; ++k) {
    c *= (exponent - (k - 1)) / k;
    s.set(k, c);
  }
  return s;
}

}  // namespace qwell
