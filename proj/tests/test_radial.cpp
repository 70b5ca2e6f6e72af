#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>

#include "opalg/op_tree.hpp"
#include "opalg/operators.hpp"
#include "opalg/radial.hpp"
#include "opalg/serialize.hpp"

using namespace opalg;
using namespace opalg::radial;

namespace {

/// Independent oracle: p -> -i hbar d/dx acting on Laurent monomials in x.
/// Applies a RadialOp to the "function" sum_k c_k x^k purely by formal
/// differentiation, with no recourse to the normal-ordering engine.
using LaurentFn = std::map<int, UnitSum>;

LaurentFn apply_via_derivative(const RadialOp& op, const LaurentFn& f) {
  LaurentFn out;
  auto add = [](LaurentFn& m, int k, const UnitSum& c) {
    if (c.is_zero()) return;
    auto [it, ins] = m.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  };
  for (const auto& [key, c] : op.terms()) {
    LaurentFn cur = f;
    for (int j = 0; j < key.p_exp; ++j) {
      LaurentFn next;
      for (const auto& [k, ck] : cur)
        if (k != 0) add(next, k - 1, ck * UnitCoeff(-Rational(k), 1, 0, 1, 0, 0));
      cur = std::move(next);
    }
    for (const auto& [k, ck] : cur) add(out, k + key.x_exp, ck * c);
  }
  return out;
}

RadialTree random_radial_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 1 ? 1 : 3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> expo(-3, 3);
  std::uniform_int_distribution<int> width(2, 3);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> which(0, 2);
      if (which(rng) == 0) return RadialTree::p();
      int e = expo(rng);
      if (e == 1) return RadialTree::x();
      return RadialTree::power(RadialTree::x(), e);
    }
    case 1:
      return RadialTree::scalar(UnitCoeff(Rational(coeff(rng)), 0, 0, 0, 0, 0));
    case 2: {
      std::vector<RadialTree> ch;
      for (int i = 0, w = width(rng); i < w; ++i) ch.push_back(random_radial_tree(rng, depth - 1));
      return RadialTree::sum(std::move(ch));
    }
    default: {
      std::vector<RadialTree> ch;
      for (int i = 0, w = width(rng); i < w; ++i) ch.push_back(random_radial_tree(rng, depth - 1));
      return RadialTree::product(std::move(ch));
    }
  }
}

/// Structural embedding of a 1D tree into the Cartesian engine with
/// x -> r and p -> p_r.
OpExpr embed(const RadialTree& t) {
  switch (t.kind()) {
    case RadialTree::Kind::X: return OpExpr::r_power(1);
    case RadialTree::Kind::P: return ops::radial_momentum_explicit();
    case RadialTree::Kind::Scalar: return OpExpr::scalar(t.scalar_value());
    case RadialTree::Kind::Sum: {
      OpExpr acc = OpExpr::zero();
      for (const auto& c : t.children()) acc += embed(c);
      return acc;
    }
    case RadialTree::Kind::Product: {
      OpExpr acc = OpExpr::one();
      for (const auto& c : t.children()) acc = acc * embed(c);
      return acc;
    }
    case RadialTree::Kind::Power: {
      const RadialTree& base = t.children().front();
      if (base.kind() == RadialTree::Kind::X) return OpExpr::r_power(t.exponent());
      return embed(base).pow(t.exponent());
    }
  }
  throw std::logic_error("unreachable");
}

OpExpr embed(const RadialOp& op) {
  OpExpr acc = OpExpr::zero();
  OpExpr pr = ops::radial_momentum_explicit();
  for (const auto& [key, c] : op.terms()) {
    OpExpr term = OpExpr::r_power(key.x_exp);
    for (int j = 0; j < key.p_exp; ++j) term = term * pr;
    acc += c * term;
  }
  return acc;
}

}  // namespace

TEST_CASE("radial normal ordering examples") {
  // p x^-2 -> x^-2 p + 2 i hbar x^-3
  RadialOp lhs = radial_normal_order(RadialTree::p() * RadialTree::power(RadialTree::x(), -2));
  RadialOp rhs = RadialOp::single({-2, 1}, UnitSum(UnitCoeff::one())) +
                 UnitCoeff(2, 1, 0, 1, 0, 0) * RadialOp::x_power(-3);
  CHECK(lhs == rhs);

  // x p - x p = 0
  RadialTree xp = RadialTree::x() * RadialTree::p();
  CHECK(radial_normal_order(xp - xp).is_zero());

  // p^2 x -> x p^2 - 2 i hbar p
  RadialOp sq = radial_normal_order(RadialTree::p() * RadialTree::p() * RadialTree::x());
  RadialOp expect = RadialOp::single({1, 2}, UnitSum(UnitCoeff::one())) +
                    UnitCoeff(-2, 1, 0, 1, 0, 0) * RadialOp::momentum();
  CHECK(sq == expect);
}

TEST_CASE("momenta may not be inverted") {
  CHECK_THROWS_AS(radial_normal_order(RadialTree::power(RadialTree::p(), -1)),
                  UnsupportedRadialExpression);
}

TEST_CASE("radial ordering agrees with the derivative oracle on monomials") {
  std::mt19937 rng(88);
  for (int trial = 0; trial < 60; ++trial) {
    RadialTree t = random_radial_tree(rng, 4);
    RadialOp op = radial_normal_order(t);
    for (int k = -3; k <= 3; ++k) {
      LaurentFn f{{k, UnitSum(UnitCoeff::one())}};
      // the operator acting on x^k via its normal form...
      LaurentFn via_form = apply_via_derivative(op, f);
      // ...must match composing the tree factor by factor.
      std::function<LaurentFn(const RadialTree&, const LaurentFn&)> apply_tree =
          [&](const RadialTree& node, const LaurentFn& g) -> LaurentFn {
        switch (node.kind()) {
          case RadialTree::Kind::X: return apply_via_derivative(RadialOp::x_power(1), g);
          case RadialTree::Kind::P: return apply_via_derivative(RadialOp::momentum(), g);
          case RadialTree::Kind::Scalar:
            return apply_via_derivative(RadialOp::scalar(node.scalar_value()), g);
          case RadialTree::Kind::Sum: {
            LaurentFn acc;
            for (const auto& ch : node.children()) {
              LaurentFn part = apply_tree(ch, g);
              for (const auto& [kk, cc] : part) {
                auto [it, ins] = acc.try_emplace(kk, cc);
                if (!ins) {
                  it->second += cc;
                  if (it->second.is_zero()) acc.erase(it);
                }
              }
            }
            return acc;
          }
          case RadialTree::Kind::Product: {
            LaurentFn acc = g;
            for (auto it = node.children().rbegin(); it != node.children().rend(); ++it)
              acc = apply_tree(*it, acc);
            return acc;
          }
          case RadialTree::Kind::Power: {
            LaurentFn acc = g;
            if (node.exponent() < 0)
              return apply_via_derivative(RadialOp::x_power(node.exponent()), g);
            for (int j = 0; j < node.exponent(); ++j) acc = apply_tree(node.children().front(), acc);
            return acc;
          }
        }
        throw std::logic_error("unreachable");
      };
      LaurentFn via_tree = apply_tree(t, f);
      REQUIRE(via_form == via_tree);
    }
  }
}

TEST_CASE("radial ordering agrees with the Cartesian engine under embedding") {
  std::mt19937 rng(2024);
  for (int done = 0; done < 20; ++done) {
    RadialTree t = random_radial_tree(rng, 3);
    RadialOp op = radial_normal_order(t);
    REQUIRE(embed(op) == embed(t));
  }
}

TEST_CASE("top-state condition substitutions") {
  // p on |2,1> in 3D: i hbar (1/(2 a0) - 2/x)
  RadialState s = apply_to_reference(RadialOp::momentum(), 2, 3);
  RadialState expect(3, 2);
  expect.add(0, UnitSum(UnitCoeff(Rational(1, 2), 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1)));
  expect.add(-1, UnitSum(UnitCoeff(-2, 1, 0, 1, 0, 0)));
  CHECK(s == expect);

  // identity op leaves poly = 1
  RadialState id = apply_to_reference(RadialOp::one(), 5, 2);
  CHECK(id.coeff(0) == UnitSum(UnitCoeff::one()));
  CHECK(id.poly().size() == 1);

  // p on |1,0> in 2D: i hbar (2/a0 - (1/2)/x)
  RadialState s2 = apply_to_reference(RadialOp::momentum(), 1, 2);
  RadialState expect2(2, 1);
  expect2.add(0, UnitSum(UnitCoeff(2, 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1)));
  expect2.add(-1, UnitSum(UnitCoeff(Rational(-1, 2), 1, 0, 1, 0, 0)));
  CHECK(s2 == expect2);
}

TEST_CASE("application is linear and multiplicative over position factors") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    RadialOp a = radial_normal_order(random_radial_tree(rng, 3));
    RadialOp b = radial_normal_order(random_radial_tree(rng, 3));
    RadialState ref = RadialState::reference(3, trial % 2 ? 2 : 3);
    CHECK(apply(a + b, ref) == apply(a, ref) + apply(b, ref));
    std::uniform_int_distribution<int> xe(-2, 2);
    int k = xe(rng);
    RadialState viaop = apply(RadialOp::x_power(k) * a, ref);
    RadialState direct = apply(a, ref);
    RadialState shifted(direct.dim(), direct.n());
    for (const auto& [e, c] : direct.poly()) shifted.add(e + k, c);
    CHECK(viaop == shifted);
  }
}

TEST_CASE("shifted momentum eigencheck") {
  auto r1 = shifted_momentum_eigencheck(1, 3);
  CHECK(r1.holds);
  CHECK(r1.eigenvalue == UnitCoeff(1, 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1));

  auto r3 = shifted_momentum_eigencheck(3, 3);
  CHECK(r3.holds);
  CHECK(r3.eigenvalue == UnitCoeff(Rational(1, 3), 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1));

  auto r2 = shifted_momentum_eigencheck(2, 2);
  CHECK(r2.holds);
  CHECK(r2.eigenvalue == UnitCoeff(Rational(2, 3), 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1));

  for (int dim : {2, 3})
    for (int n = 1; n <= 10; ++n) CHECK(shifted_momentum_eigencheck(n, dim).holds);
}

TEST_CASE("radial state serialization") {
  RadialState s = apply_to_reference(RadialOp::momentum(), 2, 3);
  io::Json j = io::radial_state_json(s);
  CHECK(j["dim"] == 3);
  CHECK(j["n"] == 2);
  REQUIRE(j["coeffs"].size() == 2);
  CHECK(j["coeffs"][0]["x_exp"] == -1);
  CHECK(j["coeffs"][0]["value"] == "-2");
  CHECK(j["coeffs"][0]["i_pow"] == 1);
}
