#include <catch2/catch_amalgamated.hpp>

#include "opalg/ladder.hpp"
#include "opalg/serialize.hpp"

using namespace opalg;
using namespace opalg::ladder;

TEST_CASE("ladder operator forms") {
  // B_0 in 3D: (1/sqrt(2 mu)) [ p - i hbar (1/a0 - 1/x) ]
  LadderOp b = build_ladder(3, 0);
  RadialOp expect =
      UnitCoeff::inv_sqrt_2mu() *
      (RadialOp::momentum() -
       UnitCoeff::i_hbar() * UnitCoeff::a0_power(-1) * RadialOp::one() +
       UnitCoeff::i_hbar() * RadialOp::x_power(-1));
  CHECK(b.lowering == expect);

  // 2D ground energy at m = 0: -2 e^2/a0
  LadderOp b2 = build_ladder(2, 0);
  CHECK(b2.ground_energy == UnitCoeff(-2, 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1));

  // B_{-|m|} = B^dagger_{|m|-1}
  CHECK(build_ladder(2, -1).lowering == build_ladder(2, 0).raising);
  CHECK(build_ladder(2, -3).lowering == build_ladder(2, 2).raising);
}

TEST_CASE("factorization of every sector Hamiltonian") {
  for (int dim : {2, 3})
    for (int s = 0; s <= 6; ++s) {
      INFO("dim " << dim << " sector " << s);
      CHECK(check_factorization(dim, s).is_zero());
    }
  // a perturbed ground energy shows up as exactly the perturbation
  LadderOp b = build_ladder(3, 2);
  UnitCoeff eps = UnitCoeff(Rational(1, 7), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1);
  RadialOp residual = sector_hamiltonian(3, 2).op -
                      (b.raising * b.lowering +
                       RadialOp::scalar(b.ground_energy) + RadialOp::scalar(eps));
  CHECK(residual == RadialOp::scalar(-eps));
}

TEST_CASE("intertwining relations") {
  for (int dim : {2, 3})
    for (int s = 0; s <= 8; ++s) {
      INFO("dim " << dim << " sector " << s);
      CHECK(check_intertwining(dim, s).holds());
    }
  // wrong-order product at dim=3, l=1 equals H_2 - E_1 exactly
  LadderOp b = build_ladder(3, 1);
  CHECK(b.lowering * b.raising ==
        sector_hamiltonian(3, 2).op - RadialOp::scalar(sector_energy(3, 1)));
}

TEST_CASE("chain coefficients") {
  ChainResult c = run_chain(3, 2, 0);
  REQUIRE(c.b_coeffs.size() == 2);
  CHECK(c.b_coeffs[0] == Rational(-3));
  CHECK(c.b_coeffs[1] == Rational(3, 2));

  ChainResult empty = run_chain(3, 5, 4);
  CHECK(empty.b_coeffs == std::vector<Rational>{Rational(1)});
  CHECK(empty.scale == UnitCoeff::one());

  ChainResult c2 = run_chain(2, 2, 0);
  REQUIRE(c2.b_coeffs.size() == 2);
  CHECK(c2.b_coeffs[0] == Rational(-2));
  CHECK(c2.b_coeffs[1] == Rational(2));

  CHECK_THROWS_AS(run_chain(3, 2, 2), std::out_of_range);
  CHECK_THROWS_AS(run_chain(3, 2, -1), std::out_of_range);
}

TEST_CASE("coefficient ratio laws") {
  // base-case ratios
  ChainResult c = run_chain(3, 2, 0);
  CHECK(c.b_coeffs[1] / c.b_coeffs[0] == Rational(-1, 2));
  for (int n = 2; n <= 8; ++n) {
    ChainResult base3 = run_chain(3, n, n - 2);
    CHECK(base3.b_coeffs[1] / base3.b_coeffs[0] == Rational(-1, 2 * (n - 1)));
    ChainResult base2 = run_chain(2, n, n - 2);
    CHECK(base2.b_coeffs[1] / base2.b_coeffs[0] == Rational(-1, 2 * n - 3));
  }
}

TEST_CASE("normalization constants") {
  NormConstant nc = compute_norm(3, 2, 0);
  CHECK(nc.product_form == UnitCoeff(Rational(3, 8), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1));
  CHECK(nc.forms_match());
  // C = sqrt(8 a0 / (3 e^2))
  AlgebraicConstant csq = nc.constant * nc.constant;
  CHECK(csq == AlgebraicConstant::from_rational(Rational(8, 3)).times_a0_half_power(2) *
                   AlgebraicConstant{1, 1, 0, 0, -4});

  // empty product: C = 1
  NormConstant top = compute_norm(3, 4, 3);
  CHECK(top.product_form == UnitCoeff::one());
  CHECK(top.constant == AlgebraicConstant::one());
  CHECK(top.forms_match());

  // 2D n=1, m=0: empty product and the closed form needs (-1)!! = 1
  NormConstant nc2 = compute_norm(2, 1, 0);
  CHECK(nc2.product_form == UnitCoeff::one());
  CHECK(nc2.forms_match());
}

TEST_CASE("Laguerre identification") {
  ChainResult c = run_chain(3, 2, 0);
  LaguerreIdentification li = laguerre_identify(c);
  CHECK(li.alpha == 1);
  CHECK(li.degree == 1);
  CHECK(li.proportionality == Rational(-3, 2));
  CHECK(li.all_match());

  // top coefficient for n=2, l=0: (1/2) 0! 3! / (1! 2!) = 3/2
  CHECK(li.top_coeff_formula == Rational(3, 2));
  CHECK(li.top_coeff == Rational(3, 2));

  // degenerate chain: L_0 = 1 with C' = 1
  LaguerreIdentification top = laguerre_identify(run_chain(3, 4, 3));
  CHECK(top.degree == 0);
  CHECK(top.proportionality == Rational(1));
  CHECK(top.all_match());
}

TEST_CASE("full exact sweep up to n = 10") {
  for (int dim : {2, 3}) {
    for (int n = 1; n <= 10; ++n) {
      for (int s = 0; s <= n - 1; ++s) {
        INFO("dim " << dim << " n " << n << " sector " << s);
        ChainResult c = run_chain(dim, n, s);
        REQUIRE(check_coefficient_ratios(c).holds);
        REQUIRE(laguerre_identify(c).all_match());
        REQUIRE(compute_norm(dim, n, s).forms_match());
        REQUIRE(check_eigenstate(dim, n, s).poly_is_zero());
      }
    }
  }
}

TEST_CASE("negative m equivalence") {
  auto r21 = check_negative_m(2, 1);
  CHECK(r21.operator_identity_holds);
  CHECK(r21.state_identity_holds);
  CHECK(r21.normalization_consistent);

  CHECK(check_negative_m(4, 0).all_hold());  // |m| = 0 is trivial
  CHECK(check_negative_m(3, 2).all_hold());

  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= n - 1; ++m) {
      INFO("n " << n << " |m| " << m);
      REQUIRE(check_negative_m(n, m).all_hold());
    }
}

TEST_CASE("energies") {
  CHECK(energy(3, 1) == UnitCoeff(Rational(-1, 2), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1));
  CHECK(energy(3, 2) == UnitCoeff(Rational(-1, 8), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1));
  CHECK(energy(2, 1) == UnitCoeff(-2, 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1));
  // canonical-basis expansion: E_0 = -mu e^4 / (2 hbar^2) in 3D
  CHECK(energy(3, 1) == UnitCoeff(Rational(-1, 2), 0, 0, -2, 2, 4));

  CHECK(energy_in_coulomb_units(3, 1) == Rational(-1, 2));
  CHECK(energy_in_coulomb_units(3, 2) == Rational(-1, 8));
  CHECK(energy_in_coulomb_units(2, 1) == Rational(-2));
}

TEST_CASE("energies increase strictly with the sector index") {
  for (int dim : {2, 3}) {
    Rational prev;
    for (int s = 0; s <= 12; ++s) {
      Rational e = sector_energy(dim, s).value;
      CHECK(e < 0);
      if (s > 0) CHECK(e > prev);
      prev = e;
    }
  }
}

TEST_CASE("degeneracy counts") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(degeneracy(3, n) == n);
    CHECK(degeneracy(2, n) == 2 * n - 1);
    // every sector in range carries the same level energy
    for (int s = 0; s <= n - 1; ++s) {
      RadialState st = chain_state(3, n, s);
      CHECK((apply(sector_hamiltonian(3, s).op, st) - energy(3, n) * st).poly_is_zero());
    }
  }
}

TEST_CASE("perturbed eigenstate residual is proportional to the perturbation") {
  RadialState st = chain_state(3, 3, 1);
  UnitCoeff eps = UnitCoeff(Rational(1, 100), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1);
  UnitCoeff wrong = energy(3, 3);
  wrong.value += eps.value;
  RadialState res = apply(sector_hamiltonian(3, 1).op, st) - wrong * st;
  CHECK(res == (-eps) * st);
}

TEST_CASE("chain serialization") {
  io::Json j = io::chain_json(run_chain(3, 2, 0));
  CHECK(j["b_coeffs"][0] == "-3");
  CHECK(j["b_coeffs"][1] == "3/2");
  CHECK(j["scale"]["i_pow"] == 1);
  io::Json nj = io::norm_json(compute_norm(3, 2, 0));
  CHECK(nj["forms_match"] == true);
  CHECK(nj["product_form"]["value"] == "3/8");
}
