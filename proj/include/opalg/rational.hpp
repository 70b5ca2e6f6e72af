#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace opalg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt acc = 1;
  for (int k = 2; k <= n; ++k) acc *= k;
  return acc;
}

/// Odd/even double factorial n!!, with (-1)!! = 0!! = 1.
inline BigInt double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double_factorial: argument below -1");
  BigInt acc = 1;
  for (int k = n; k >= 2; k -= 2) acc *= k;
  return acc;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt acc = 1;
  for (int j = 1; j <= k; ++j) {
    acc *= (n - k + j);
    acc /= j;
  }
  return acc;
}

inline Rational pow_rational(const Rational& base, int exp) {
  if (exp == 0) return 1;
  if (exp < 0) {
    if (base == 0) throw std::domain_error("pow_rational: zero to negative power");
    return pow_rational(Rational(1) / base, -exp);
  }
  Rational acc = 1;
  for (int k = 0; k < exp; ++k) acc *= base;
  return acc;
}

inline std::string fraction_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

/// Splits n > 0 as n = square^2 * rest with rest squarefree. All integers this
/// project takes roots of are built from factorials and small primes, so plain
/// trial division terminates quickly.
inline std::pair<BigInt, BigInt> extract_square(BigInt n) {
  if (n <= 0) throw std::domain_error("extract_square: nonpositive argument");
  BigInt square = 1, rest = 1;
  for (BigInt p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int mult = 0;
    while (n % p == 0) {
      n /= p;
      ++mult;
    }
    for (int k = 0; k < mult / 2; ++k) square *= p;
    if (mult % 2 != 0) rest *= p;
  }
  rest *= n;
  return {square, rest};
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q);
}

}  // namespace opalg
