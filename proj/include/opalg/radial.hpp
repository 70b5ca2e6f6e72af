#pragma once

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opalg/units.hpp"

namespace opalg::radial {

/// Key of one normal-ordered 1D term x^x_exp p^p_exp (x to the left).
struct RadialKey {
  int x_exp = 0;
  int p_exp = 0;
  friend auto operator<=>(const RadialKey&, const RadialKey&) = default;
};

/// Operator algebra in one radial coordinate x and its conjugate momentum p,
/// with Laurent powers of x and the commutation rule [p, x^k] = -i hbar k
/// x^(k-1) for every integer k.
class RadialOp {
 public:
  using TermMap = std::map<RadialKey, UnitSum>;

  RadialOp() = default;

  static RadialOp zero() { return {}; }
  static RadialOp one() { return scalar(UnitCoeff::one()); }
  static RadialOp scalar(const UnitCoeff& c) { return single({0, 0}, UnitSum(c)); }
  static RadialOp x_power(int k) { return single({k, 0}, UnitSum(UnitCoeff::one())); }
  static RadialOp momentum() { return single({0, 1}, UnitSum(UnitCoeff::one())); }

  static RadialOp single(RadialKey k, UnitSum c) {
    RadialOp op;
    op.add_term(k, std::move(c));
    return op;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  friend bool operator==(const RadialOp& a, const RadialOp& b) { return a.terms_ == b.terms_; }

  RadialOp& operator+=(const RadialOp& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend RadialOp operator+(RadialOp a, const RadialOp& b) { return a += b; }

  RadialOp operator-() const {
    RadialOp r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  RadialOp& operator-=(const RadialOp& o) { return *this += -o; }
  friend RadialOp operator-(RadialOp a, const RadialOp& b) { return a -= b; }

  friend RadialOp operator*(const UnitCoeff& c, const RadialOp& o) {
    RadialOp r;
    for (const auto& [k, cs] : o.terms_) r.add_term(k, cs * c);
    return r;
  }
  friend RadialOp operator*(const RadialOp& o, const UnitCoeff& c) { return c * o; }
  friend RadialOp operator*(const UnitSum& c, const RadialOp& o) {
    RadialOp r;
    for (const auto& [k, cs] : o.terms_) r.add_term(k, cs * c);
    return r;
  }

  /// Normal-ordered product; p-factors of the left term are commuted through
  /// the right term's x-powers one at a time.
  friend RadialOp operator*(const RadialOp& a, const RadialOp& b) {
    RadialOp out;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        // x^ka.x p^ka.p x^kb.x p^kb.p
        RadialOp mid = x_power(kb.x_exp);
        for (int j = 0; j < ka.p_exp; ++j) mid = premultiply_momentum(mid);
        for (const auto& [km, cm] : mid.terms_) {
          RadialKey k{ka.x_exp + km.x_exp, km.p_exp + kb.p_exp};
          out.add_term(k, (ca * cb) * cm);
        }
      }
    }
    return out;
  }

  RadialOp pow(int k) const {
    RadialOp acc = one();
    for (int j = 0; j < k; ++j) acc = acc * *this;
    return acc;
  }

  /// Hermitian adjoint: reverse factors, conjugate coefficients, reorder.
  RadialOp dagger() const {
    RadialOp out;
    for (const auto& [k, c] : terms_) {
      RadialOp rev = x_power(k.x_exp);
      for (int j = 0; j < k.p_exp; ++j) rev = premultiply_momentum(rev);
      out += c.conj() * rev;
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << "  +  ";
      first = false;
      os << "(" << c.str() << ")";
      if (k.x_exp != 0) os << " x^" << k.x_exp;
      if (k.p_exp != 0) os << " p^" << k.p_exp;
    }
    return os.str();
  }

 private:
  TermMap terms_;

  void add_term(const RadialKey& k, const UnitSum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// p * op for a p-free op: p x^k = x^k p - i hbar k x^(k-1).
  static RadialOp premultiply_momentum(const RadialOp& op) {
    RadialOp out;
    for (const auto& [k, c] : op.terms_) {
      out.add_term({k.x_exp, k.p_exp + 1}, c);
      if (k.x_exp != 0) {
        UnitCoeff d = UnitCoeff(-Rational(k.x_exp), 1, 0, 1, 0, 0);  // -i hbar k
        out.add_term({k.x_exp - 1, k.p_exp}, c * d);
      }
    }
    return out;
  }
};

struct UnsupportedRadialExpression : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw 1D expression tree over {x, p}, scalars, sums, products and integer
/// powers of x (Laurent exponents allowed).
class RadialTree {
 public:
  enum class Kind { X, P, Scalar, Sum, Product, Power };

  static RadialTree x() { return RadialTree(Kind::X); }
  static RadialTree p() { return RadialTree(Kind::P); }
  static RadialTree scalar(UnitCoeff c) {
    RadialTree t(Kind::Scalar);
    t.scalar_ = std::move(c);
    return t;
  }
  static RadialTree sum(std::vector<RadialTree> ch) {
    RadialTree t(Kind::Sum);
    t.children_ = std::move(ch);
    return t;
  }
  static RadialTree product(std::vector<RadialTree> ch) {
    RadialTree t(Kind::Product);
    t.children_ = std::move(ch);
    return t;
  }
  static RadialTree power(RadialTree base, int exp) {
    RadialTree t(Kind::Power);
    t.children_.push_back(std::move(base));
    t.exponent_ = exp;
    return t;
  }

  friend RadialTree operator+(RadialTree a, RadialTree b) {
    return sum({std::move(a), std::move(b)});
  }
  friend RadialTree operator*(RadialTree a, RadialTree b) {
    return product({std::move(a), std::move(b)});
  }
  friend RadialTree operator*(UnitCoeff c, RadialTree a) {
    return product({scalar(std::move(c)), std::move(a)});
  }
  friend RadialTree operator-(RadialTree a, RadialTree b) {
    return sum({std::move(a), UnitCoeff::rational(-1) * std::move(b)});
  }

  Kind kind() const { return kind_; }
  const UnitCoeff& scalar_value() const { return scalar_; }
  const std::vector<RadialTree>& children() const { return children_; }
  int exponent() const { return exponent_; }

 private:
  explicit RadialTree(Kind k) : kind_(k) {}
  Kind kind_;
  UnitCoeff scalar_ = UnitCoeff::zero();
  std::vector<RadialTree> children_;
  int exponent_ = 1;
};

inline RadialOp radial_normal_order(const RadialTree& t) {
  switch (t.kind()) {
    case RadialTree::Kind::X: return RadialOp::x_power(1);
    case RadialTree::Kind::P: return RadialOp::momentum();
    case RadialTree::Kind::Scalar: return RadialOp::scalar(t.scalar_value());
    case RadialTree::Kind::Sum: {
      RadialOp acc;
      for (const auto& c : t.children()) acc += radial_normal_order(c);
      return acc;
    }
    case RadialTree::Kind::Product: {
      RadialOp acc = RadialOp::one();
      for (const auto& c : t.children()) acc = acc * radial_normal_order(c);
      return acc;
    }
    case RadialTree::Kind::Power: {
      const RadialTree& base = t.children().front();
      if (t.exponent() < 0) {
        if (base.kind() != RadialTree::Kind::X)
          throw UnsupportedRadialExpression("only x may carry negative powers");
        return RadialOp::x_power(t.exponent());
      }
      return radial_normal_order(base).pow(t.exponent());
    }
  }
  throw std::logic_error("unreachable");
}

/// Laurent polynomial in x applied to the reference eigenket |n, n-1> of the
/// dim-dimensional Coulomb problem. The ket itself is never expanded; the
/// top-state condition B|n,n-1> = 0 is the only rule that consumes momentum factors.
class RadialState {
 public:
  RadialState(int dim, int n) : dim_(dim), n_(n) {
    if (n < 1) throw std::invalid_argument("RadialState: n must be positive");
    if (dim != 2 && dim != 3) throw std::invalid_argument("RadialState: dim must be 2 or 3");
  }

  static RadialState reference(int n, int dim) {
    RadialState s(dim, n);
    s.poly_[0] = UnitSum(UnitCoeff::one());
    return s;
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  /// nu = n in 3D, n - 1/2 in 2D.
  Rational nu() const { return dim_ == 3 ? Rational(n_) : Rational(2 * n_ - 1, 2); }

  const std::map<int, UnitSum>& poly() const { return poly_; }
  bool poly_is_zero() const { return poly_.empty(); }

  UnitSum coeff(int x_exp) const {
    auto it = poly_.find(x_exp);
    return it == poly_.end() ? UnitSum::zero() : it->second;
  }

  friend bool operator==(const RadialState& a, const RadialState& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.poly_ == b.poly_;
  }

  RadialState& add(int x_exp, const UnitSum& c) {
    if (c.is_zero()) return *this;
    auto [it, inserted] = poly_.try_emplace(x_exp, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) poly_.erase(it);
    }
    return *this;
  }

  friend RadialState operator+(const RadialState& a, const RadialState& b) {
    if (a.dim_ != b.dim_ || a.n_ != b.n_)
      throw std::invalid_argument("RadialState: incompatible reference kets");
    RadialState out = a;
    for (const auto& [k, c] : b.poly_) out.add(k, c);
    return out;
  }
  friend RadialState operator-(const RadialState& a, const RadialState& b) {
    return a + (UnitCoeff::rational(-1) * b);
  }
  friend RadialState operator*(const UnitCoeff& c, const RadialState& s) {
    RadialState out(s.dim_, s.n_);
    for (const auto& [k, cs] : s.poly_) out.add(k, cs * c);
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    if (poly_.empty()) os << "0";
    bool first = true;
    for (const auto& [k, c] : poly_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (k != 0) os << " x^" << k;
    }
    os << ") |" << n_ << "," << n_ - 1 << ">_" << dim_ << "d";
    return os.str();
  }

 private:
  int dim_;
  int n_;
  std::map<int, UnitSum> poly_;
};

/// One momentum acting on a polynomial state: p q(x)|ref> =
/// (q p - i hbar q')|ref> followed by the top-state rule
/// p |ref> = i hbar (1/(nu a0) - nu/x) |ref>.
inline RadialState apply_momentum(const RadialState& s) {
  RadialState out(s.dim(), s.n());
  Rational nu = s.nu();
  // i hbar / (nu a0) = i (1/nu) hbar^-1 mu e^2
  UnitCoeff c0 = UnitCoeff(Rational(1) / nu, 1, 0, 0, 0, 0) * UnitCoeff::hbar() *
                 UnitCoeff::a0_power(-1);
  // -i hbar nu x^-1
  UnitCoeff c1 = UnitCoeff(-nu, 1, 0, 1, 0, 0);
  for (const auto& [k, c] : s.poly()) {
    out.add(k, c * c0);
    out.add(k - 1, c * c1);
    if (k != 0) out.add(k - 1, c * UnitCoeff(-Rational(k), 1, 0, 1, 0, 0));  // -i hbar q'
  }
  return out;
}

/// op applied to a polynomial state, eliminating all momentum factors
/// right-to-left through the top-state condition.
inline RadialState apply(const RadialOp& op, const RadialState& s) {
  RadialState out(s.dim(), s.n());
  for (const auto& [k, c] : op.terms()) {
    RadialState cur = s;
    for (int j = 0; j < k.p_exp; ++j) cur = apply_momentum(cur);
    for (const auto& [xe, cc] : cur.poly()) out.add(xe + k.x_exp, cc * c);
  }
  return out;
}

/// op applied directly to the reference ket |n, n-1>.
inline RadialState apply_to_reference(const RadialOp& op, int n, int dim) {
  return apply(op, RadialState::reference(n, dim));
}

struct EigencheckReport {
  UnitCoeff eigenvalue;
  RadialState residual;
  bool holds;
};

/// Verifies (p + i hbar c / x) x^-(n-1) |n,n-1> = (i hbar / (nu a0)) x^-(n-1)
/// |n,n-1> with c = 1 (3D) or 1/2 (2D); returns the eigenvalue and the
/// residual state, which must vanish identically.
inline EigencheckReport shifted_momentum_eigencheck(int n, int dim) {
  Rational c = dim == 3 ? Rational(1) : Rational(1, 2);
  Rational nu = dim == 3 ? Rational(n) : Rational(2 * n - 1, 2);
  RadialOp shifted = RadialOp::momentum() +
                     UnitCoeff(c, 1, 0, 1, 0, 0) * RadialOp::x_power(-1);
  RadialOp op = shifted * RadialOp::x_power(-(n - 1));
  UnitCoeff eigenvalue =
      UnitCoeff(Rational(1) / nu, 1, 0, 0, 0, 0) * UnitCoeff::hbar() * UnitCoeff::a0_power(-1);
  RadialState lhs = apply_to_reference(op, n, dim);
  RadialState rhs = eigenvalue * apply_to_reference(RadialOp::x_power(-(n - 1)), n, dim);
  RadialState residual = lhs - rhs;
  return {eigenvalue, residual, residual.poly_is_zero()};
}

}  // namespace opalg::radial
