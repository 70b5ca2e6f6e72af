#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <compare>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "opalg/rational.hpp"

namespace opalg {

/// One exact scalar of the operator algebra:
///
///   value * i^i_pow * sqrt(2)^sqrt2_pow * hbar^hbar_exp * mu^(mu_exp_x2/2) * e^e_exp
///
/// The unit basis is {hbar, mu, e}; the Bohr radius is not a generator and is
/// expanded as hbar^2 mu^-1 e^-2 on input (see a0_power). i^2 and sqrt(2)^2 are
/// folded into the sign/value, so i_pow and sqrt2_pow stay in {0,1}. Only mu is
/// allowed a half-integer exponent (stored doubled), which is where the ladder
/// operators' 1/sqrt(2 mu) prefactor lives.
struct UnitCoeff {
  Rational value = 0;
  int i_pow = 0;
  int sqrt2_pow = 0;
  int hbar_exp = 0;
  int mu_exp_x2 = 0;
  int e_exp = 0;

  UnitCoeff() = default;
  UnitCoeff(Rational v, int ip, int s2, int h, int mx2, int e)
      : value(std::move(v)), i_pow(ip), sqrt2_pow(s2), hbar_exp(h), mu_exp_x2(mx2), e_exp(e) {
    normalize();
  }

  static UnitCoeff zero() { return UnitCoeff{}; }
  static UnitCoeff one() { return rational(1); }
  static UnitCoeff rational(Rational q) { return UnitCoeff(std::move(q), 0, 0, 0, 0, 0); }
  static UnitCoeff imaginary_unit() { return UnitCoeff(1, 1, 0, 0, 0, 0); }
  static UnitCoeff hbar(int exp = 1) { return UnitCoeff(1, 0, 0, exp, 0, 0); }
  static UnitCoeff mu(int exp = 1) { return UnitCoeff(1, 0, 0, 0, 2 * exp, 0); }
  static UnitCoeff charge(int exp = 1) { return UnitCoeff(1, 0, 0, 0, 0, exp); }
  /// i*hbar, the ubiquitous commutator prefactor.
  static UnitCoeff i_hbar() { return UnitCoeff(1, 1, 0, 1, 0, 0); }
  /// a0^k expanded in the canonical basis: (hbar^2 mu^-1 e^-2)^k.
  static UnitCoeff a0_power(int k) { return UnitCoeff(1, 0, 0, 2 * k, -2 * k, -2 * k); }
  /// 1/sqrt(2 mu) = (1/2) sqrt(2) mu^(-1/2).
  static UnitCoeff inv_sqrt_2mu() { return UnitCoeff(Rational(1, 2), 0, 1, 0, -1, 0); }

  bool is_zero() const { return value == 0; }

  void normalize() {
    if (value == 0) {
      i_pow = sqrt2_pow = hbar_exp = mu_exp_x2 = e_exp = 0;
      return;
    }
    i_pow = ((i_pow % 4) + 4) % 4;
    if (i_pow >= 2) {
      value = -value;
      i_pow -= 2;
    }
    assert(sqrt2_pow >= 0);
    value *= pow_rational(Rational(2), sqrt2_pow / 2);
    sqrt2_pow %= 2;
  }

  /// Unit signature used to decide which coefficients may be added.
  std::tuple<int, int, int, int, int> signature() const {
    return {i_pow, sqrt2_pow, hbar_exp, mu_exp_x2, e_exp};
  }

  friend UnitCoeff operator*(const UnitCoeff& a, const UnitCoeff& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return UnitCoeff(a.value * b.value, a.i_pow + b.i_pow, a.sqrt2_pow + b.sqrt2_pow,
                     a.hbar_exp + b.hbar_exp, a.mu_exp_x2 + b.mu_exp_x2, a.e_exp + b.e_exp);
  }

  friend UnitCoeff operator/(const UnitCoeff& a, const UnitCoeff& b) {
    if (b.is_zero()) throw std::domain_error("UnitCoeff: division by zero");
    if (a.is_zero()) return zero();
    // 1/i = -i, 1/sqrt2 = sqrt2/2.
    UnitCoeff inv(Rational(1) / b.value, b.i_pow == 1 ? 3 : 0, b.sqrt2_pow,
                  -b.hbar_exp, -b.mu_exp_x2, -b.e_exp);
    if (b.sqrt2_pow == 1) inv.value /= 2;
    return a * inv;
  }

  UnitCoeff operator-() const {
    UnitCoeff r = *this;
    r.value = -r.value;
    return r;
  }

  /// Complex conjugate: i -> -i.
  UnitCoeff conj() const {
    UnitCoeff r = *this;
    if (r.i_pow == 1) r.value = -r.value;
    return r;
  }

  UnitCoeff pow(int k) const {
    if (k < 0) return one() / pow(-k);
    UnitCoeff acc = one();
    for (int j = 0; j < k; ++j) acc = acc * *this;
    return acc;
  }

  friend bool operator==(const UnitCoeff& a, const UnitCoeff& b) {
    return a.value == b.value && a.signature() == b.signature();
  }

  /// Numeric value with units substituted (defaults: hbar = mu = e = 1, the
  /// a0 = 1 evaluation convention).
  std::complex<double> to_complex(double hbar_v = 1.0, double mu_v = 1.0, double e_v = 1.0) const {
    double mag = to_double(value) * std::pow(2.0, 0.5 * sqrt2_pow) * std::pow(hbar_v, hbar_exp) *
                 std::pow(mu_v, 0.5 * mu_exp_x2) * std::pow(e_v, e_exp);
    return i_pow == 1 ? std::complex<double>(0.0, mag) : std::complex<double>(mag, 0.0);
  }

  /// Requires a purely real coefficient.
  double to_real(double hbar_v = 1.0, double mu_v = 1.0, double e_v = 1.0) const {
    if (i_pow != 0 && !is_zero()) throw std::domain_error("UnitCoeff: not real");
    return to_complex(hbar_v, mu_v, e_v).real();
  }

  /// Requires a plain rational (no i, no sqrt2, no units).
  Rational to_rational() const {
    if (!is_zero() && signature() != std::tuple{0, 0, 0, 0, 0})
      throw std::domain_error("UnitCoeff: not a plain rational");
    return value;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << fraction_string(value);
    if (i_pow == 1) os << "*i";
    if (sqrt2_pow == 1) os << "*sqrt2";
    // Display-time refactoring through a0 = hbar^2/(mu e^2): pick the a0 power
    // that leaves the smallest residual unit monomial.
    int best_k = 0;
    long best_score = unit_score(0);
    for (int k = -8; k <= 8; ++k) {
      long s = unit_score(k);
      if (s < best_score || (s == best_score && std::abs(k) < std::abs(best_k))) {
        best_score = s;
        best_k = k;
      }
    }
    int h = hbar_exp - 2 * best_k;
    int mx2 = mu_exp_x2 + 2 * best_k;
    int e = e_exp + 2 * best_k;
    auto put = [&os](const char* sym, int num, int den) {
      if (num == 0) return;
      os << "*" << sym;
      if (num != den) {
        os << "^" << (den == 1 ? std::to_string(num)
                               : std::to_string(num) + "/" + std::to_string(den));
      }
    };
    put("hbar", h, 1);
    if (mx2 % 2 == 0)
      put("mu", mx2 / 2, 1);
    else
      put("mu", mx2, 2);
    put("e", e, 1);
    put("a0", best_k, 1);
    return os.str();
  }

 private:
  long unit_score(int k) const {
    return std::abs(hbar_exp - 2 * k) + std::abs(mu_exp_x2 + 2 * k) + std::abs(e_exp + 2 * k) +
           (k != 0 ? 1 : 0);
  }
};

/// A finite sum of UnitCoeffs with pairwise distinct unit signatures, kept
/// sorted. This is the coefficient type of the operator algebra; for all the
/// physics in this project each coefficient stays a single monomial, but sums
/// keep intermediate arithmetic closed.
class UnitSum {
 public:
  UnitSum() = default;
  UnitSum(UnitCoeff c) {
    if (!c.is_zero()) parts_.push_back(std::move(c));
  }

  static UnitSum zero() { return UnitSum{}; }

  bool is_zero() const { return parts_.empty(); }
  const std::vector<UnitCoeff>& parts() const { return parts_; }

  UnitSum& operator+=(const UnitCoeff& c) {
    if (c.is_zero()) return *this;
    auto it = std::lower_bound(parts_.begin(), parts_.end(), c.signature(),
                               [](const UnitCoeff& p, const auto& sig) { return p.signature() < sig; });
    if (it != parts_.end() && it->signature() == c.signature()) {
      it->value += c.value;
      if (it->value == 0) parts_.erase(it);
    } else {
      parts_.insert(it, c);
    }
    return *this;
  }

  UnitSum& operator+=(const UnitSum& o) {
    for (const auto& c : o.parts_) *this += c;
    return *this;
  }
  UnitSum& operator-=(const UnitSum& o) {
    for (const auto& c : o.parts_) *this += -c;
    return *this;
  }

  friend UnitSum operator+(UnitSum a, const UnitSum& b) { return a += b; }
  friend UnitSum operator-(UnitSum a, const UnitSum& b) { return a -= b; }

  friend UnitSum operator*(const UnitSum& a, const UnitCoeff& c) {
    UnitSum r;
    for (const auto& p : a.parts_) r += p * c;
    return r;
  }
  friend UnitSum operator*(const UnitCoeff& c, const UnitSum& a) { return a * c; }
  friend UnitSum operator*(const UnitSum& a, const UnitSum& b) {
    UnitSum r;
    for (const auto& p : a.parts_)
      for (const auto& q : b.parts_) r += p * q;
    return r;
  }

  UnitSum operator-() const {
    UnitSum r;
    for (const auto& p : parts_) r.parts_.push_back(-p);
    return r;
  }

  UnitSum conj() const {
    UnitSum r;
    for (const auto& p : parts_) r += p.conj();
    return r;
  }

  friend bool operator==(const UnitSum& a, const UnitSum& b) { return a.parts_ == b.parts_; }

  friend std::strong_ordering operator<=>(const UnitSum& a, const UnitSum& b) {
    size_t n = std::min(a.parts_.size(), b.parts_.size());
    for (size_t i = 0; i < n; ++i) {
      if (auto c = a.parts_[i].signature() <=> b.parts_[i].signature(); c != 0) return c;
      if (auto c = a.parts_[i].value.compare(b.parts_[i].value); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.parts_.size() <=> b.parts_.size();
  }

  /// The sole coefficient of a single-signature sum (zero if empty).
  UnitCoeff as_single() const {
    if (parts_.empty()) return UnitCoeff::zero();
    if (parts_.size() != 1) throw std::domain_error("UnitSum: mixed unit signatures");
    return parts_.front();
  }

  std::complex<double> to_complex(double hbar_v = 1.0, double mu_v = 1.0, double e_v = 1.0) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& p : parts_) acc += p.to_complex(hbar_v, mu_v, e_v);
    return acc;
  }

  std::string str() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += " + ";
      s += parts_[i].str();
    }
    return s;
  }

 private:
  std::vector<UnitCoeff> parts_;
};

/// A positive-real exact constant of the form
///
///   value * sqrt(radicand) * hbar^(h2/2) * mu^(m2/2) * e^(e2/2)
///
/// with radicand a squarefree positive integer; closed under multiplication
/// (gcd-based radical combination) and exactly comparable. Normalization
/// constants and wavefunction amplitudes live here.
struct AlgebraicConstant {
  Rational value = 1;
  BigInt radicand = 1;
  int hbar_exp_x2 = 0;
  int mu_exp_x2 = 0;
  int e_exp_x2 = 0;

  static AlgebraicConstant one() { return {}; }

  static AlgebraicConstant from_rational(Rational q) {
    AlgebraicConstant c;
    c.value = std::move(q);
    return c;
  }

  /// a0^(k_x2/2) in the canonical unit basis.
  AlgebraicConstant times_a0_half_power(int k_x2) const {
    AlgebraicConstant c = *this;
    c.hbar_exp_x2 += 2 * k_x2;
    c.mu_exp_x2 -= k_x2;
    c.e_exp_x2 -= 2 * k_x2;
    return c;
  }

  /// sqrt(q) for a positive rational q.
  static AlgebraicConstant sqrt_rational(const Rational& q) {
    if (q <= 0) throw std::domain_error("sqrt_rational: nonpositive argument");
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt pq = numerator(q) * denominator(q);
    auto [sq, rest] = extract_square(pq);
    AlgebraicConstant c;
    c.value = Rational(sq, denominator(q));
    c.radicand = rest;
    return c;
  }

  /// sqrt of a real, positive UnitCoeff with integral mu exponent.
  static AlgebraicConstant sqrt_coeff(const UnitCoeff& u) {
    if (u.i_pow != 0 || u.value <= 0) throw std::domain_error("sqrt_coeff: not real positive");
    if (u.mu_exp_x2 % 2 != 0) throw std::domain_error("sqrt_coeff: quarter-integer mu power");
    AlgebraicConstant c = sqrt_rational(u.value);
    if (u.sqrt2_pow == 1) c = c * sqrt_rational(Rational(2));
    c.hbar_exp_x2 += u.hbar_exp;
    c.mu_exp_x2 += u.mu_exp_x2 / 2;
    c.e_exp_x2 += u.e_exp;
    return c;
  }

  /// Exact value of a real UnitCoeff (must be positive; sqrt2 handled).
  static AlgebraicConstant from_coeff(const UnitCoeff& u) {
    if (u.i_pow != 0) throw std::domain_error("from_coeff: not real");
    AlgebraicConstant c;
    c.value = u.value;
    if (u.sqrt2_pow == 1) c.radicand = 2;
    c.hbar_exp_x2 = 2 * u.hbar_exp;
    c.mu_exp_x2 = u.mu_exp_x2;
    c.e_exp_x2 = 2 * u.e_exp;
    return c;
  }

  friend AlgebraicConstant operator*(const AlgebraicConstant& a, const AlgebraicConstant& b) {
    AlgebraicConstant c;
    BigInt g = gcd(a.radicand, b.radicand);
    c.value = a.value * b.value * g;
    c.radicand = (a.radicand / g) * (b.radicand / g);
    c.hbar_exp_x2 = a.hbar_exp_x2 + b.hbar_exp_x2;
    c.mu_exp_x2 = a.mu_exp_x2 + b.mu_exp_x2;
    c.e_exp_x2 = a.e_exp_x2 + b.e_exp_x2;
    if (c.value == 0) return AlgebraicConstant{0, 1, 0, 0, 0};
    return c;
  }

  AlgebraicConstant inverse() const {
    if (value == 0) throw std::domain_error("AlgebraicConstant: inverse of zero");
    AlgebraicConstant c;
    c.value = Rational(1) / (value * radicand);
    c.radicand = radicand;
    c.hbar_exp_x2 = -hbar_exp_x2;
    c.mu_exp_x2 = -mu_exp_x2;
    c.e_exp_x2 = -e_exp_x2;
    return c;
  }

  AlgebraicConstant pow_a0(int k) const {
    AlgebraicConstant c = *this;
    c.hbar_exp_x2 += 4 * k;
    c.mu_exp_x2 -= 2 * k;
    c.e_exp_x2 -= 4 * k;
    return c;
  }

  friend bool operator==(const AlgebraicConstant& a, const AlgebraicConstant& b) = default;

  double to_double(double hbar_v = 1.0, double mu_v = 1.0, double e_v = 1.0) const {
    return opalg::to_double(value) * std::sqrt(static_cast<double>(radicand)) *
           std::pow(hbar_v, 0.5 * hbar_exp_x2) * std::pow(mu_v, 0.5 * mu_exp_x2) *
           std::pow(e_v, 0.5 * e_exp_x2);
  }

  std::string str() const {
    std::ostringstream os;
    os << fraction_string(value);
    if (radicand != 1) os << "*sqrt(" << radicand.str() << ")";
    auto put = [&os](const char* sym, int x2) {
      if (x2 == 0) return;
      os << "*" << sym << "^";
      if (x2 % 2 == 0)
        os << x2 / 2;
      else
        os << x2 << "/2";
    };
    put("hbar", hbar_exp_x2);
    put("mu", mu_exp_x2);
    put("e", e_exp_x2);
    return os.str();
  }
};

}  // namespace opalg
