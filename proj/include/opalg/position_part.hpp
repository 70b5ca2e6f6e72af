#pragma once

#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opalg/units.hpp"

namespace opalg {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// One monomial of the position ring: rx^x ry^y rz^z * r^r * rho^rho, with the
/// radical bits r, rho in {0,1} (r^2 and rho^2 reduce to polynomials).
struct PosMonomial {
  int x = 0;
  int y = 0;
  int z = 0;
  int r = 0;
  int rho = 0;

  friend auto operator<=>(const PosMonomial&, const PosMonomial&) = default;

  int coord(Axis a) const { return a == Axis::X ? x : a == Axis::Y ? y : z; }
  void bump(Axis a, int d) {
    if (a == Axis::X)
      x += d;
    else if (a == Axis::Y)
      y += d;
    else
      z += d;
  }
};

/// An element of the commutative position algebra
///
///   numerator / (r^2)^r2_den (rho^2)^rho2_den
///
/// where the numerator is a polynomial in (rx, ry, rz) over the module basis
/// {1, r, rho, r rho}, reduced modulo r^2 = rx^2+ry^2+rz^2 and
/// rho^2 = rx^2+ry^2. The fraction is kept in lowest terms (the numerator is
/// not divisible by r^2 or rho^2 while the matching denominator exponent is
/// positive), which makes equality a plain field comparison.
class PositionPart {
 public:
  using TermMap = std::map<PosMonomial, UnitSum>;

  PositionPart() = default;

  static PositionPart zero() { return {}; }

  static PositionPart one() { return scalar(UnitCoeff::one()); }

  static PositionPart scalar(const UnitCoeff& c) {
    PositionPart p;
    p.add_term(PosMonomial{}, UnitSum(c));
    return p;
  }

  static PositionPart monomial(const PosMonomial& m, const UnitSum& c) {
    PositionPart p;
    p.add_term(m, c);
    return p;
  }

  static PositionPart coordinate(Axis a) {
    PosMonomial m;
    m.bump(a, 1);
    return monomial(m, UnitSum(UnitCoeff::one()));
  }

  /// r^k for any integer k; even powers expand through r^2 = rx^2+ry^2+rz^2.
  static PositionPart r_power(int k) {
    PositionPart p = one();
    if (k >= 0) {
      for (int j = 0; j < k / 2; ++j) p = p * radial_square_poly();
      if (k % 2) p = p * basis_r();
    } else {
      int j = -k;
      if (j % 2) p = basis_r();
      p.r2_den_ = (j + (j % 2)) / 2;
    }
    return p;
  }

  /// rho^k for any integer k; even powers expand through rho^2 = rx^2+ry^2.
  static PositionPart rho_power(int k) {
    PositionPart p = one();
    if (k >= 0) {
      for (int j = 0; j < k / 2; ++j) p = p * planar_square_poly();
      if (k % 2) p = p * basis_rho();
    } else {
      int j = -k;
      if (j % 2) p = basis_rho();
      p.rho2_den_ = (j + (j % 2)) / 2;
    }
    return p;
  }

  bool is_zero() const { return num_.empty(); }
  const TermMap& terms() const { return num_; }
  int r2_den() const { return r2_den_; }
  int rho2_den() const { return rho2_den_; }

  friend bool operator==(const PositionPart& a, const PositionPart& b) {
    return a.r2_den_ == b.r2_den_ && a.rho2_den_ == b.rho2_den_ && a.num_ == b.num_;
  }

  friend PositionPart operator+(const PositionPart& a, const PositionPart& b) {
    PositionPart res;
    res.r2_den_ = std::max(a.r2_den_, b.r2_den_);
    res.rho2_den_ = std::max(a.rho2_den_, b.rho2_den_);
    TermMap na = lifted(a, res.r2_den_ - a.r2_den_, res.rho2_den_ - a.rho2_den_);
    TermMap nb = lifted(b, res.r2_den_ - b.r2_den_, res.rho2_den_ - b.rho2_den_);
    res.num_ = std::move(na);
    for (auto& [m, c] : nb) res.add_term(m, c);
    res.reduce();
    return res;
  }

  friend PositionPart operator-(const PositionPart& a, const PositionPart& b) { return a + (-b); }

  PositionPart operator-() const {
    PositionPart res = *this;
    for (auto& [m, c] : res.num_) c = -c;
    return res;
  }

  friend PositionPart operator*(const PositionPart& a, const PositionPart& b) {
    PositionPart res;
    res.r2_den_ = a.r2_den_ + b.r2_den_;
    res.rho2_den_ = a.rho2_den_ + b.rho2_den_;
    for (const auto& [ma, ca] : a.num_) {
      for (const auto& [mb, cb] : b.num_) {
        UnitSum c = ca * cb;
        if (c.is_zero()) continue;
        for (const auto& m : monomial_product(ma, mb)) res.add_term(m, c);
      }
    }
    res.reduce();
    return res;
  }

  friend PositionPart operator*(const PositionPart& a, const UnitCoeff& c) {
    PositionPart res;
    res.r2_den_ = a.r2_den_;
    res.rho2_den_ = a.rho2_den_;
    for (const auto& [m, cm] : a.num_) res.add_term(m, cm * c);
    if (res.num_.empty()) res.r2_den_ = res.rho2_den_ = 0;
    return res;
  }
  friend PositionPart operator*(const UnitCoeff& c, const PositionPart& a) { return a * c; }

  friend PositionPart operator*(const PositionPart& a, const UnitSum& c) {
    PositionPart res;
    res.r2_den_ = a.r2_den_;
    res.rho2_den_ = a.rho2_den_;
    for (const auto& [m, cm] : a.num_) res.add_term(m, cm * c);
    if (res.num_.empty()) res.r2_den_ = res.rho2_den_ = 0;
    return res;
  }
  friend PositionPart operator*(const UnitSum& c, const PositionPart& a) { return a * c; }

  PositionPart conj() const {
    PositionPart res;
    res.r2_den_ = r2_den_;
    res.rho2_den_ = rho2_den_;
    for (const auto& [m, c] : num_) res.add_term(m, c.conj());
    return res;
  }

  std::string str() const {
    if (num_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : num_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      auto put = [&os](const char* sym, int e) {
        if (e == 0) return;
        os << "*" << sym;
        if (e != 1) os << "^" << e;
      };
      put("rx", m.x);
      put("ry", m.y);
      put("rz", m.z);
      put("r", m.r);
      put("rho", m.rho);
    }
    if (r2_den_ || rho2_den_) {
      os << " / (";
      if (r2_den_) os << "r^" << 2 * r2_den_;
      if (r2_den_ && rho2_den_) os << " ";
      if (rho2_den_) os << "rho^" << 2 * rho2_den_;
      os << ")";
    }
    return os.str();
  }

 private:
  TermMap num_;
  int r2_den_ = 0;
  int rho2_den_ = 0;

  static PositionPart basis_r() {
    PosMonomial m;
    m.r = 1;
    return monomial(m, UnitSum(UnitCoeff::one()));
  }
  static PositionPart basis_rho() {
    PosMonomial m;
    m.rho = 1;
    return monomial(m, UnitSum(UnitCoeff::one()));
  }

  static PositionPart radial_square_poly() {
    PositionPart p;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      PosMonomial m;
      m.bump(a, 2);
      p.add_term(m, UnitSum(UnitCoeff::one()));
    }
    return p;
  }
  static PositionPart planar_square_poly() {
    PositionPart p;
    for (Axis a : {Axis::X, Axis::Y}) {
      PosMonomial m;
      m.bump(a, 2);
      p.add_term(m, UnitSum(UnitCoeff::one()));
    }
    return p;
  }

  void add_term(const PosMonomial& m, const UnitSum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = num_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) num_.erase(it);
    }
  }

  /// Expands the product of two monomials over the module basis; radical bits
  /// adding to 2 fall back onto the defining polynomials.
  static std::vector<PosMonomial> monomial_product(const PosMonomial& a, const PosMonomial& b) {
    PosMonomial base{a.x + b.x, a.y + b.y, a.z + b.z, 0, 0};
    std::vector<PosMonomial> out{base};
    auto expand = [](std::vector<PosMonomial> in, bool planar) {
      std::vector<PosMonomial> next;
      next.reserve(in.size() * (planar ? 2 : 3));
      for (const auto& m : in) {
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
          if (planar && ax == Axis::Z) continue;
          PosMonomial e = m;
          e.bump(ax, 2);
          next.push_back(e);
        }
      }
      return next;
    };
    int rsum = a.r + b.r;
    if (rsum == 2)
      out = expand(std::move(out), false);
    else
      for (auto& m : out) m.r = rsum;
    int rhosum = a.rho + b.rho;
    if (rhosum == 2)
      out = expand(std::move(out), true);
    else
      for (auto& m : out) m.rho = rhosum;
    return out;
  }

  static TermMap lifted(const PositionPart& p, int dr, int drho) {
    TermMap out = p.num_;
    for (int j = 0; j < dr; ++j) out = multiply_poly(out, radial_square_poly().num_);
    for (int j = 0; j < drho; ++j) out = multiply_poly(out, planar_square_poly().num_);
    return out;
  }

  static TermMap multiply_poly(const TermMap& f, const TermMap& g) {
    TermMap out;
    for (const auto& [mf, cf] : f) {
      for (const auto& [mg, cg] : g) {
        UnitSum c = cf * cg;
        if (c.is_zero()) continue;
        for (const auto& m : monomial_product(mf, mg)) {
          auto [it, inserted] = out.try_emplace(m, c);
          if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
          }
        }
      }
    }
    return out;
  }

  /// Exact division of the numerator by rx^2+ry^2(+rz^2). The divisor's lex
  /// leading term is rx^2, so failure of the leading-term step certifies
  /// indivisibility.
  static std::optional<TermMap> divide_by_square(const TermMap& f, bool planar) {
    TermMap work = f;
    TermMap quotient;
    while (!work.empty()) {
      auto it = std::prev(work.end());
      PosMonomial lt = it->first;
      if (lt.x < 2) return std::nullopt;
      UnitSum c = it->second;
      PosMonomial q = lt;
      q.x -= 2;
      quotient[q] += c;
      for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        if (planar && ax == Axis::Z) continue;
        PosMonomial m = q;
        m.bump(ax, 2);
        auto [jt, inserted] = work.try_emplace(m, UnitSum::zero());
        jt->second -= c;
        if (jt->second.is_zero()) work.erase(jt);
      }
    }
    return quotient;
  }

  void reduce() {
    if (num_.empty()) {
      r2_den_ = rho2_den_ = 0;
      return;
    }
    while (r2_den_ > 0) {
      auto q = divide_by_square(num_, false);
      if (!q) break;
      num_ = std::move(*q);
      --r2_den_;
    }
    while (rho2_den_ > 0) {
      auto q = divide_by_square(num_, true);
      if (!q) break;
      num_ = std::move(*q);
      --rho2_den_;
    }
  }
};

}  // namespace opalg
