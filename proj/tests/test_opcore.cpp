#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opalg/op_tree.hpp"
#include "opalg/operators.hpp"
#include "opalg/serialize.hpp"

using namespace opalg;

namespace {

OpTree gen(Generator g) { return OpTree::generator(g); }

OpExpr ihbar_expr() { return OpExpr::scalar(UnitCoeff::i_hbar()); }

/// Random raw expression trees, depth-bounded, with exponents small enough to
/// keep products tractable.
OpTree random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 1 ? 1 : 3);
  std::uniform_int_distribution<int> genpick(0, 7);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> width(2, 3);
  switch (kind(rng)) {
    case 0: {
      Generator g = static_cast<Generator>(genpick(rng));
      std::uniform_int_distribution<int> expo(is_radical(g) ? -2 : 0, 2);
      int e = expo(rng);
      if (e == 1) return gen(g);
      return OpTree::power(gen(g), e);
    }
    case 1: {
      UnitCoeff c = UnitCoeff(Rational(coeff(rng)), 0, 0, 0, 0, 0);
      std::uniform_int_distribution<int> imag(0, 1);
      if (imag(rng)) c = c * UnitCoeff::imaginary_unit();
      return OpTree::scalar(c);
    }
    case 2: {
      std::vector<OpTree> ch;
      for (int i = 0, w = width(rng); i < w; ++i) ch.push_back(random_tree(rng, depth - 1));
      return OpTree::sum(std::move(ch));
    }
    default: {
      std::vector<OpTree> ch;
      for (int i = 0, w = width(rng); i < w; ++i) ch.push_back(random_tree(rng, depth - 1));
      return OpTree::product(std::move(ch));
    }
  }
}

/// The operators the identity catalog is built from.
std::vector<OpExpr> catalog_operators() {
  using namespace ops;
  return {momentum(Axis::X),   momentum(Axis::Y),
          momentum(Axis::Z),   coordinate(Axis::X),
          OpExpr::r_power(1),  OpExpr::r_power(-1),
          OpExpr::rho_power(1), OpExpr::rho_power(-1),
          cos_theta(),         sin_theta(),
          cos_phi(),           sin_phi(),
          radial_momentum_explicit(), theta_momentum_explicit(), phi_momentum_explicit(),
          angular_momentum(Axis::X), angular_momentum(Axis::Z)};
}

}  // namespace

TEST_CASE("canonical commutation relation") {
  OpExpr lhs = normal_order(gen(Generator::PX) * gen(Generator::RX));
  OpExpr rhs = normal_order(gen(Generator::RX) * gen(Generator::PX)) - ihbar_expr();
  CHECK(lhs == rhs);
  CHECK(normal_order(gen(Generator::PX) * gen(Generator::RY)) ==
        normal_order(gen(Generator::RY) * gen(Generator::PX)));
}

TEST_CASE("momentum through inverse radius") {
  OpExpr lhs = normal_order(gen(Generator::PX) * OpTree::power(gen(Generator::R), -1));
  OpExpr rhs = OpExpr::r_power(-1) * OpExpr::momentum(Axis::X) +
               UnitCoeff::i_hbar() * (OpExpr::coordinate(Axis::X) * OpExpr::r_power(-3));
  CHECK(lhs == rhs);
}

TEST_CASE("additive inverse cancels exactly") {
  OpTree t = gen(Generator::RX) * gen(Generator::PX) + OpTree::scalar(UnitCoeff::i_hbar());
  CHECK((normal_order(t) - normal_order(t)).is_zero());
}

TEST_CASE("radical arithmetic is canonical") {
  OpExpr sum = normal_order(
      OpTree::sum({OpTree::power(gen(Generator::RX), 2), OpTree::power(gen(Generator::RY), 2),
                   OpTree::power(gen(Generator::RZ), 2)}) *
      OpTree::power(gen(Generator::R), -2));
  CHECK(sum == OpExpr::one());
  CHECK(normal_order(gen(Generator::R) * gen(Generator::R)) ==
        normal_order(OpTree::sum({OpTree::power(gen(Generator::RX), 2),
                                  OpTree::power(gen(Generator::RY), 2),
                                  OpTree::power(gen(Generator::RZ), 2)})));
  CHECK(normal_order(gen(Generator::Rho) * gen(Generator::Rho)) ==
        normal_order(OpTree::sum({OpTree::power(gen(Generator::RX), 2),
                                  OpTree::power(gen(Generator::RY), 2)})));
}

TEST_CASE("inverting non-radical generators is rejected") {
  CHECK_THROWS_AS(normal_order(OpTree::power(gen(Generator::RX), -1)), UnsupportedExpression);
  CHECK_THROWS_AS(normal_order(OpTree::power(gen(Generator::PX), -2)), UnsupportedExpression);
  CHECK_THROWS_AS(normal_order(OpTree::power(gen(Generator::RX) + gen(Generator::RY), -1)),
                  UnsupportedExpression);
}

TEST_CASE("appendix commutators with trig operators") {
  OpExpr c1 = commutator(ops::momentum(Axis::Z), ops::cos_theta());
  CHECK(c1 == -UnitCoeff::i_hbar() * (OpExpr::rho_power(2) * OpExpr::r_power(-3)));

  OpExpr c2 = commutator(ops::momentum(Axis::X), ops::sin_phi());
  CHECK(c2 == UnitCoeff::i_hbar() * (OpExpr::coordinate(Axis::X) * OpExpr::coordinate(Axis::Y) *
                                     OpExpr::rho_power(-3)));

  CHECK(commutator(ops::momentum(Axis::X), ops::momentum(Axis::Y)).is_zero());
}

TEST_CASE("symmetrized spherical momenta match the corrected forms") {
  CHECK_NOTHROW(ops::build_spherical_momentum(ops::Spherical::Radial));
  CHECK_NOTHROW(ops::build_spherical_momentum(ops::Spherical::Theta));
  CHECK_NOTHROW(ops::build_spherical_momentum(ops::Spherical::Phi));
  CHECK_NOTHROW(ops::build_planar_momentum(ops::Planar::Radial));
  CHECK_NOTHROW(ops::build_planar_momentum(ops::Planar::Phi));
}

TEST_CASE("kinetic energy decomposition, three dimensions") {
  OpExpr ke = OpExpr::zero();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) ke += ops::momentum(a) * ops::momentum(a);
  OpExpr pr = ops::build_spherical_momentum(ops::Spherical::Radial);
  CHECK(ke == pr * pr + OpExpr::r_power(-2) * ops::angular_momentum_squared());
}

TEST_CASE("kinetic energy decomposition, two dimensions") {
  OpExpr ke = ops::momentum(Axis::X) * ops::momentum(Axis::X) +
              ops::momentum(Axis::Y) * ops::momentum(Axis::Y);
  OpExpr prho = ops::build_planar_momentum(ops::Planar::Radial);
  OpExpr lz = ops::angular_momentum(Axis::Z);
  CHECK(ke == prho * prho +
                  OpExpr::rho_power(-2) *
                      (lz * lz - OpExpr::scalar(UnitCoeff(Rational(1, 4), 0, 0, 2, 0, 0))));
}

TEST_CASE("fraction reduction with mixed unit signatures") {
  // (1 + i hbar)(rx^2 + ry^2 + rz^2)/r^2 reduces to 1 + i hbar
  UnitCoeff one = UnitCoeff::one();
  UnitCoeff ih = UnitCoeff::i_hbar();
  OpExpr s = OpExpr::coordinate(Axis::X) * OpExpr::coordinate(Axis::X) +
             OpExpr::coordinate(Axis::Y) * OpExpr::coordinate(Axis::Y) +
             OpExpr::coordinate(Axis::Z) * OpExpr::coordinate(Axis::Z);
  OpExpr mixed = (one * s + ih * s) * OpExpr::r_power(-2);
  CHECK(mixed == OpExpr::scalar(one) + OpExpr::scalar(ih));

  // partial divisibility must not reduce: (hbar rx^2 + ry^2)/r^2 stays put
  OpExpr partial = (UnitCoeff::hbar() * (OpExpr::coordinate(Axis::X) * OpExpr::coordinate(Axis::X)) +
                    OpExpr::coordinate(Axis::Y) * OpExpr::coordinate(Axis::Y)) *
                   OpExpr::r_power(-2);
  REQUIRE(partial.terms().size() == 1);
  CHECK(partial.terms().begin()->second.r2_den() == 1);
}

TEST_CASE("normal ordering is idempotent on random trees") {
  std::mt19937 rng(20240613);
  for (int i = 0; i < 200; ++i) {
    OpTree t = random_tree(rng, 6);
    OpExpr once = normal_order(t);
    OpExpr twice = normal_order(to_tree(once));
    REQUIRE(once == twice);
  }
}

TEST_CASE("normal ordering is linear") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    OpTree a = random_tree(rng, 4);
    OpTree b = random_tree(rng, 4);
    OpExpr sum = normal_order(a + b);
    CHECK(sum == normal_order(a) + normal_order(b));
  }
}

TEST_CASE("commutator is bilinear and antisymmetric") {
  auto opsv = catalog_operators();
  std::mt19937 rng(99);
  std::uniform_int_distribution<size_t> pick(0, opsv.size() - 1);
  std::uniform_int_distribution<int> sc(-3, 3);
  for (int i = 0; i < 40; ++i) {
    const OpExpr& a = opsv[pick(rng)];
    const OpExpr& b = opsv[pick(rng)];
    const OpExpr& c = opsv[pick(rng)];
    CHECK((commutator(a, b) + commutator(b, a)).is_zero());
    UnitCoeff alpha = UnitCoeff::rational(sc(rng));
    UnitCoeff beta = UnitCoeff::rational(sc(rng)) * UnitCoeff::imaginary_unit();
    OpExpr lin = commutator(alpha * a + beta * b, c);
    CHECK(lin == alpha * commutator(a, c) + beta * commutator(b, c));
  }
}

TEST_CASE("Jacobi identity on catalog operators") {
  auto opsv = catalog_operators();
  std::mt19937 rng(1234);
  std::uniform_int_distribution<size_t> pick(0, opsv.size() - 1);
  for (int i = 0; i < 30; ++i) {
    const OpExpr& a = opsv[pick(rng)];
    const OpExpr& b = opsv[pick(rng)];
    const OpExpr& c = opsv[pick(rng)];
    OpExpr jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                 commutator(c, commutator(a, b));
    REQUIRE(jac.is_zero());
  }
}

TEST_CASE("Leibniz rule on catalog operators") {
  auto opsv = catalog_operators();
  std::mt19937 rng(4321);
  std::uniform_int_distribution<size_t> pick(0, opsv.size() - 1);
  for (int i = 0; i < 30; ++i) {
    const OpExpr& a = opsv[pick(rng)];
    const OpExpr& b = opsv[pick(rng)];
    const OpExpr& c = opsv[pick(rng)];
    OpExpr lhs = commutator(a, b * c);
    OpExpr rhs = commutator(a, b) * c + b * commutator(a, c);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("operator product is associative") {
  auto opsv = catalog_operators();
  std::mt19937 rng(31337);
  std::uniform_int_distribution<size_t> pick(0, opsv.size() - 1);
  for (int i = 0; i < 30; ++i) {
    const OpExpr& a = opsv[pick(rng)];
    const OpExpr& b = opsv[pick(rng)];
    const OpExpr& c = opsv[pick(rng)];
    REQUIRE(((a * b) * c) == (a * (b * c)));
  }
}

TEST_CASE("adjoint is an involution and reverses products") {
  auto opsv = catalog_operators();
  std::mt19937 rng(2718);
  std::uniform_int_distribution<size_t> pick(0, opsv.size() - 1);
  for (int i = 0; i < 30; ++i) {
    const OpExpr& a = opsv[pick(rng)];
    const OpExpr& b = opsv[pick(rng)];
    CHECK(a.dagger().dagger() == a);
    CHECK((a * b).dagger() == b.dagger() * a.dagger());
  }
  // the quantum correction is exactly what makes p_r formally symmetric
  OpExpr pr = ops::radial_momentum_explicit();
  CHECK(pr.dagger() == pr);
  OpExpr uncorrected = pr + UnitCoeff::i_hbar() * OpExpr::r_power(-1);
  CHECK(uncorrected.dagger() == uncorrected - UnitCoeff(2, 1, 0, 1, 0, 0) * OpExpr::r_power(-1));
}

TEST_CASE("angular momentum algebra") {
  using namespace ops;
  CHECK(commutator(angular_momentum(Axis::X), angular_momentum(Axis::Y)) ==
        UnitCoeff::i_hbar() * angular_momentum(Axis::Z));
  for (Axis a : {Axis::X, Axis::Y, Axis::Z})
    CHECK(commutator(angular_momentum_squared(), angular_momentum(a)).is_zero());
  // L commutes with r and p_r
  CHECK(commutator(angular_momentum(Axis::Z), OpExpr::r_power(1)).is_zero());
  CHECK(commutator(angular_momentum(Axis::Z), radial_momentum_explicit()).is_zero());
}

TEST_CASE("deterministic text and JSON forms") {
  OpExpr e = commutator(ops::momentum(Axis::Z), ops::cos_theta());
  CHECK(e.str() == (-UnitCoeff::i_hbar() * (OpExpr::rho_power(2) * OpExpr::r_power(-3))).str());
  io::Json j = io::op_expr_json(e);
  REQUIRE(j.is_array());
  // rho^2 expands, so the fraction carries the two monomials (rx^2 + ry^2) r / r^4
  REQUIRE(j.size() == 2);
  for (const auto& term : j) {
    CHECK(term["coeff"][0]["value"] == "-1");
    CHECK(term["coeff"][0]["i_pow"] == 1);
    CHECK(term["coeff"][0]["hbar_exp"] == 1);
    CHECK(term["r2_den"] == 2);
    CHECK(term["monomial"]["r"] == 1);
    CHECK(term["momentum"] == io::Json({{"px", 0}, {"py", 0}, {"pz", 0}}));
  }
  CHECK(io::op_expr_json(e).dump() == j.dump());
}
