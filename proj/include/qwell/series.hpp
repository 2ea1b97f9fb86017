// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <vector>

namespace qwell {

// Truncated power series in one formal variable. An object of order N
// represents c0 + c1 x + ... + cN x^N with everything past x^N unknown.
// Binary operations keep the conservative common order (the min of the
// operand orders), so no coefficient is ever silently invented. The series
// carries no variable label; the caller tracks what x stands for.
class Series {
 public:
  Series() = default;                          // order 0, value 0
  explicit Series(int order);                  // zero series of given order
  Series(std::initializer_list<double> coeffs);

  static Series constant(double value, int order);
  static Series identity(int order);           // the variable x itself

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](int k) const;              // 0 past the stored order
  void set(int k, double value);

  Series truncated(int order) const;           // drop coefficients past order
  Series padded(int order) const;              // declare the tail exactly zero

  double eval(double x) const;

  Series operator+(const Series& rhs) const;
  Series operator-(const Series& rhs) const;
  Series operator*(const Series& rhs) const;   // Cauchy product, compensated
  Series scaled(double factor) const;
  Series derivative() const;
  Series antiderivative() const;               // integration constant 0
  Series reciprocal() const;                   // needs nonzero constant term

 private:
  std::vector<double> coeffs_{0.0};
};

// outer(inner(x)) to the common truncation order; inner must have zero
// constant term.
Series compose(const Series& outer, const Series& inner);

// Compositional inverse: returns t with compose(s, t) = x to the truncation
// order. Requires s[0] = 0 and s[1] != 0.
Series revert(const Series& s);

enum class MaclaurinFn { exp, erf };
Series maclaurin(MaclaurinFn fn, int order);

// (1 + x)^exponent
Series binomial(double exponent, int order);

}  // namespace qwell
