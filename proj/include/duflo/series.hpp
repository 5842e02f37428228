#pragma once

// Truncated univariate power series over the exact rationals, represented as
// dense coefficient vectors c[0..order].  exp/log/sqrt use the standard
// derivative recurrences (g = log f  <=>  g' f = f', etc.), which stay inside
// the rationals at every step.

#include <duflo/scalar.hpp>

#include <vector>

namespace duflo {

struct Series {
  // coeff[k] multiplies x^k; size fixes the truncation order (inclusive).
  std::vector<Rational> coeff;

  explicit Series(unsigned order = 0) : coeff(order + 1, Rational(0)) {}
  unsigned order() const { return static_cast<unsigned>(coeff.size()) - 1; }
  static Series one(unsigned order);
};

Series series_add(const Series& a, const Series& b);
Series series_mul(const Series& a, const Series& b);

// log f for f with constant term 1.
Series series_log(const Series& f);
// exp u for u with constant term 0.
Series series_exp(const Series& u);
// Square root with constant term 1 of f with constant term 1.
Series series_sqrt(const Series& f);

// sinh(x/2)/(x/2) = Σ_n x^{2n} / (4^n (2n+1)!), truncated.
Series sinh_half_over_half(unsigned order);

}  // namespace duflo
