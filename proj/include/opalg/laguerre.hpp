#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "opalg/rational.hpp"

namespace opalg::laguerre {

/// Associated Laguerre polynomial L_m^(alpha) with coefficients
/// a_j = (-1)^j / j! * binom(m + alpha, m - j). The convention is fixed once
/// here; every downstream identification depends on it.
struct LaguerrePoly {
  int alpha = 0;
  int degree = 0;
  std::vector<Rational> coeffs;  // coeffs[j] multiplies x^j, j = 0..degree
};

inline LaguerrePoly laguerre(int alpha, int m) {
  if (alpha < 0 || m < 0) throw std::invalid_argument("laguerre: negative parameters");
  LaguerrePoly p;
  p.alpha = alpha;
  p.degree = m;
  p.coeffs.reserve(m + 1);
  for (int j = 0; j <= m; ++j) {
    Rational a = Rational(binomial(m + alpha, m - j)) / Rational(factorial(j));
    if (j % 2) a = -a;
    p.coeffs.push_back(a);
  }
  return p;
}

inline double eval(const LaguerrePoly& p, double x) {
  double acc = 0.0;
  for (int j = p.degree; j >= 0; --j) acc = acc * x + to_double(p.coeffs[j]);
  return acc;
}

inline Rational eval_exact(const LaguerrePoly& p, const Rational& x) {
  Rational acc = 0;
  for (int j = p.degree; j >= 0; --j) acc = acc * x + p.coeffs[j];
  return acc;
}

/// Normalized eigenfunction of L_z: Y_m(phi) = e^(i m phi) / sqrt(2 pi).
inline std::complex<double> angular_eigenfunction_2d(int m, double phi) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return std::polar(norm, m * phi);
}

namespace detail {

/// Fully normalized associated Legendre value N_lm P_l^m(cos theta) including
/// the Condon-Shortley phase, by upward recurrence in l; m >= 0.
inline double normalized_legendre(int l, int m, double costh) {
  double sinth = std::sqrt(std::max(0.0, 1.0 - costh * costh));
  // P~_m^m
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= m; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sinth;
  if (l == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * costh * pmm;  // P~_{m+1}^m
  if (l == m + 1) return pm1;
  double prev2 = pmm, prev1 = pm1, cur = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
    double b = std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) /
                         (4.0 * double(ll - 1) * (ll - 1) - 1.0));
    cur = a * (costh * prev1 - b * prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

}  // namespace detail

/// Orthonormal spherical harmonic Y_lm(theta, phi), physics convention with
/// Condon-Shortley phase; Y_{l,-m} = (-1)^m conj(Y_lm).
inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::invalid_argument("spherical_harmonic: bad indices");
  int ma = std::abs(m);
  double plm = detail::normalized_legendre(l, ma, std::cos(theta));
  std::complex<double> y = plm * std::polar(1.0, ma * phi);
  if (m < 0) {
    y = std::conj(y);
    if (ma % 2) y = -y;
  }
  return y;
}

}  // namespace opalg::laguerre
