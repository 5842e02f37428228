#pragma once

// Exact rational scalar for the whole library.  Everything downstream
// (polynomials, PBW coefficients, series, row reduction) works over this
// type; no floating point enters any computation path.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace duflo {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// n! as an exact rational (numerator only, of course).
inline Rational factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

// Binomial coefficient C(n, k), zero when k > n.
inline Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  if (k > n - k) k = n - k;
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= BigInt(n - i);
    den *= BigInt(i + 1);
  }
  return Rational(num, den);
}

// Parses "p" or "p/q" with optional leading sign; rejects anything else
// (whitespace, exponents, hex, zero denominators).
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t i = start;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    return i;
  };
  if (text[pos] == '+' || text[pos] == '-') ++pos;
  std::size_t num_end = digits(pos);
  if (num_end == pos)
    throw std::invalid_argument("bad rational literal: " + text);
  if (num_end == text.size()) return Rational(BigInt(text));
  if (text[num_end] != '/')
    throw std::invalid_argument("bad rational literal: " + text);
  std::size_t den_start = num_end + 1;
  std::size_t den_end = digits(den_start);
  if (den_end != text.size() || den_end == den_start)
    throw std::invalid_argument("bad rational literal: " + text);
  BigInt num(text.substr(0, num_end));
  BigInt den(text.substr(den_start));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  return Rational(num, den);
}

// Canonical "p" / "p/q" rendering (q > 0, gcd(p,q) = 1; boost keeps the
// fraction normalized already).
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace duflo
