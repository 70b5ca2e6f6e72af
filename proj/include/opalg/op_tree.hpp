#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opalg/op_expr.hpp"

namespace opalg {

struct UnsupportedExpression : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Generator { RX, RY, RZ, R, Rho, PX, PY, PZ };

inline bool is_momentum(Generator g) {
  return g == Generator::PX || g == Generator::PY || g == Generator::PZ;
}
inline bool is_radical(Generator g) { return g == Generator::R || g == Generator::Rho; }

/// Raw operator expression tree over the ten generators
/// {rx, ry, rz, r, rho, 1/r, 1/rho, px, py, pz}, scalars, sums and products.
/// normal_order() is the only consumer.
class OpTree {
 public:
  enum class Kind { Gen, Scalar, Sum, Product, Power };

  static OpTree generator(Generator g) {
    OpTree t(Kind::Gen);
    t.gen_ = g;
    return t;
  }
  static OpTree scalar(UnitCoeff c) {
    OpTree t(Kind::Scalar);
    t.scalar_ = std::move(c);
    return t;
  }
  static OpTree sum(std::vector<OpTree> children) {
    OpTree t(Kind::Sum);
    t.children_ = std::move(children);
    return t;
  }
  static OpTree product(std::vector<OpTree> children) {
    OpTree t(Kind::Product);
    t.children_ = std::move(children);
    return t;
  }
  static OpTree power(OpTree base, int exponent) {
    OpTree t(Kind::Power);
    t.children_.push_back(std::move(base));
    t.exponent_ = exponent;
    return t;
  }

  friend OpTree operator+(OpTree a, OpTree b) { return sum({std::move(a), std::move(b)}); }
  friend OpTree operator*(OpTree a, OpTree b) { return product({std::move(a), std::move(b)}); }
  friend OpTree operator*(UnitCoeff c, OpTree a) {
    return product({scalar(std::move(c)), std::move(a)});
  }
  friend OpTree operator-(OpTree a, OpTree b) {
    return sum({std::move(a), UnitCoeff::rational(-1) * std::move(b)});
  }

  Kind kind() const { return kind_; }
  Generator gen() const { return gen_; }
  const UnitCoeff& scalar_value() const { return scalar_; }
  const std::vector<OpTree>& children() const { return children_; }
  int exponent() const { return exponent_; }

 private:
  explicit OpTree(Kind k) : kind_(k) {}

  Kind kind_;
  Generator gen_ = Generator::RX;
  UnitCoeff scalar_ = UnitCoeff::zero();
  std::vector<OpTree> children_;
  int exponent_ = 1;
};

namespace detail {

inline OpExpr generator_expr(Generator g) {
  switch (g) {
    case Generator::RX: return OpExpr::coordinate(Axis::X);
    case Generator::RY: return OpExpr::coordinate(Axis::Y);
    case Generator::RZ: return OpExpr::coordinate(Axis::Z);
    case Generator::R: return OpExpr::r_power(1);
    case Generator::Rho: return OpExpr::rho_power(1);
    case Generator::PX: return OpExpr::momentum(Axis::X);
    case Generator::PY: return OpExpr::momentum(Axis::Y);
    case Generator::PZ: return OpExpr::momentum(Axis::Z);
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// Canonical normal form of a raw expression tree. Idempotent and linear.
/// Throws UnsupportedExpression when asked to invert anything but the radial
/// generators r and rho.
inline OpExpr normal_order(const OpTree& t) {
  switch (t.kind()) {
    case OpTree::Kind::Gen:
      return detail::generator_expr(t.gen());
    case OpTree::Kind::Scalar:
      return OpExpr::scalar(t.scalar_value());
    case OpTree::Kind::Sum: {
      OpExpr acc = OpExpr::zero();
      for (const auto& c : t.children()) acc += normal_order(c);
      return acc;
    }
    case OpTree::Kind::Product: {
      OpExpr acc = OpExpr::one();
      for (const auto& c : t.children()) acc = acc * normal_order(c);
      return acc;
    }
    case OpTree::Kind::Power: {
      const OpTree& base = t.children().front();
      int k = t.exponent();
      if (k < 0) {
        if (base.kind() != OpTree::Kind::Gen || !is_radical(base.gen()))
          throw UnsupportedExpression("only the radial generators r and rho may be inverted");
        return base.gen() == Generator::R ? OpExpr::r_power(k) : OpExpr::rho_power(k);
      }
      return normal_order(base).pow(k);
    }
  }
  throw std::logic_error("unreachable");
}

/// Re-expands a normal form into a raw tree (used to exercise idempotence).
inline OpTree to_tree(const OpExpr& e) {
  std::vector<OpTree> terms;
  for (const auto& [w, f] : e.terms()) {
    for (const auto& [m, cs] : f.terms()) {
      for (const auto& c : cs.parts()) {
        std::vector<OpTree> factors{OpTree::scalar(c)};
        auto rep = [&factors](Generator g, int exp) {
          for (int j = 0; j < exp; ++j) factors.push_back(OpTree::generator(g));
        };
        rep(Generator::RX, m.x);
        rep(Generator::RY, m.y);
        rep(Generator::RZ, m.z);
        rep(Generator::R, m.r);
        rep(Generator::Rho, m.rho);
        if (f.r2_den() > 0)
          factors.push_back(OpTree::power(OpTree::generator(Generator::R), -2 * f.r2_den()));
        if (f.rho2_den() > 0)
          factors.push_back(OpTree::power(OpTree::generator(Generator::Rho), -2 * f.rho2_den()));
        rep(Generator::PX, w.x);
        rep(Generator::PY, w.y);
        rep(Generator::PZ, w.z);
        terms.push_back(OpTree::product(std::move(factors)));
      }
    }
  }
  if (terms.empty()) return OpTree::scalar(UnitCoeff::zero());
  return OpTree::sum(std::move(terms));
}

}  // namespace opalg
