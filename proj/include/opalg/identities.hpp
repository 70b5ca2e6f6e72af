#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/operators.hpp"

namespace opalg {

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One product c * F1 F2 ... Fk of named operator factors. Keeping the factor
/// structure (instead of a pre-multiplied normal form) lets the differential
/// oracle apply each side compositionally, independent of the symbolic
/// rewriting it is checking.
struct OracleProduct {
  UnitCoeff coeff;
  std::vector<OpExpr> factors;
};

struct OracleSide {
  std::vector<OracleProduct> products;

  OpExpr to_expr() const {
    OpExpr acc = OpExpr::zero();
    for (const auto& p : products) {
      OpExpr prod = OpExpr::one();
      for (const auto& f : p.factors) prod = prod * f;
      acc += p.coeff * prod;
    }
    return acc;
  }
};

struct CatalogIdentity {
  std::string id;
  std::string description;
  int dim;  // 3 or 2; selects the differential oracle's sample domain
  OracleSide lhs;
  OracleSide rhs;
};

struct IdentityReport {
  bool holds;
  OpExpr residual;
};

namespace detail {

inline OracleSide side(std::vector<OracleProduct> ps) { return OracleSide{std::move(ps)}; }

inline OracleSide expr_side(OpExpr e) {
  return OracleSide{{OracleProduct{UnitCoeff::one(), {std::move(e)}}}};
}

inline OracleSide commutator_side(OpExpr a, OpExpr b) {
  return OracleSide{{OracleProduct{UnitCoeff::one(), {a, b}},
                     OracleProduct{UnitCoeff::rational(-1), {std::move(b), std::move(a)}}}};
}

inline OracleSide zero_side() { return OracleSide{}; }

inline const char* axis_name(Axis a) { return a == Axis::X ? "x" : a == Axis::Y ? "y" : "z"; }

inline std::vector<CatalogIdentity> build_catalog() {
  using namespace ops;
  std::vector<CatalogIdentity> cat;
  const UnitCoeff ih = UnitCoeff::i_hbar();
  const UnitCoeff ih_half(Rational(1, 2), 1, 0, 1, 0, 0);
  const std::array<Axis, 3> axes{Axis::X, Axis::Y, Axis::Z};

  auto add = [&cat](std::string id, std::string desc, int dim, OracleSide lhs, OracleSide rhs) {
    cat.push_back({std::move(id), std::move(desc), dim, std::move(lhs), std::move(rhs)});
  };
  auto coord_over = [](Axis a, int rpow, int rhopow) {
    return OpExpr::from_position(PositionPart::coordinate(a) * PositionPart::r_power(rpow) *
                                 PositionPart::rho_power(rhopow));
  };

  // Momentum against the radial operators and their inverses.
  for (Axis a : axes) {
    std::string an = axis_name(a);
    add("momentum_rsquared_comm_" + an, "[p_" + an + ", r^2] = -2 i hbar r_" + an, 3,
        commutator_side(momentum(a), OpExpr::r_power(2)),
        expr_side(UnitCoeff(-2, 1, 0, 1, 0, 0) * coordinate(a)));
    add("momentum_r_comm_" + an, "[p_" + an + ", r] = -i hbar r_" + an + "/r", 3,
        commutator_side(momentum(a), OpExpr::r_power(1)), expr_side(-ih * coord_over(a, -1, 0)));
    add("momentum_inv_r_comm_" + an, "[p_" + an + ", 1/r] = i hbar r_" + an + "/r^3", 3,
        commutator_side(momentum(a), OpExpr::r_power(-1)), expr_side(ih * coord_over(a, -3, 0)));
    OpExpr rho_rhs = a == Axis::Z ? OpExpr::zero() : -ih * coord_over(a, 0, -1);
    add("momentum_rho_comm_" + an, "[p_" + an + ", rho]", 3,
        commutator_side(momentum(a), OpExpr::rho_power(1)), expr_side(rho_rhs));
    OpExpr invrho_rhs = a == Axis::Z ? OpExpr::zero() : ih * coord_over(a, 0, -3);
    add("momentum_inv_rho_comm_" + an, "[p_" + an + ", 1/rho]", 3,
        commutator_side(momentum(a), OpExpr::rho_power(-1)), expr_side(invrho_rhs));
  }

  // Momentum against the trigonometric operators.
  auto xy_over = [](int rpow, int rhopow) {
    return OpExpr::from_position(PositionPart::coordinate(Axis::X) *
                                 PositionPart::coordinate(Axis::Y) * PositionPart::r_power(rpow) *
                                 PositionPart::rho_power(rhopow));
  };
  auto sq_over = [](Axis a, int rpow, int rhopow) {
    return OpExpr::from_position(PositionPart::coordinate(a) * PositionPart::coordinate(a) *
                                 PositionPart::r_power(rpow) * PositionPart::rho_power(rhopow));
  };
  auto zcoord_over = [](Axis a, int rpow, int rhopow) {
    return OpExpr::from_position(PositionPart::coordinate(a) * PositionPart::coordinate(Axis::Z) *
                                 PositionPart::r_power(rpow) * PositionPart::rho_power(rhopow));
  };

  add("momentum_costheta_comm_x", "[p_x, cos theta] = i hbar r_x r_z / r^3", 3,
      commutator_side(momentum(Axis::X), cos_theta()), expr_side(ih * zcoord_over(Axis::X, -3, 0)));
  add("momentum_costheta_comm_y", "[p_y, cos theta] = i hbar r_y r_z / r^3", 3,
      commutator_side(momentum(Axis::Y), cos_theta()), expr_side(ih * zcoord_over(Axis::Y, -3, 0)));
  add("momentum_costheta_comm_z", "[p_z, cos theta] = -i hbar rho^2 / r^3", 3,
      commutator_side(momentum(Axis::Z), cos_theta()),
      expr_side(-ih * (OpExpr::rho_power(2) * OpExpr::r_power(-3))));

  add("momentum_sintheta_comm_x", "[p_x, sin theta] = -i hbar r_x r_z^2 / (rho r^3)", 3,
      commutator_side(momentum(Axis::X), sin_theta()),
      expr_side(-ih * (sq_over(Axis::Z, -3, -1) *
                       OpExpr::from_position(PositionPart::coordinate(Axis::X)))));
  add("momentum_sintheta_comm_y", "[p_y, sin theta] = -i hbar r_y r_z^2 / (rho r^3)", 3,
      commutator_side(momentum(Axis::Y), sin_theta()),
      expr_side(-ih * (sq_over(Axis::Z, -3, -1) *
                       OpExpr::from_position(PositionPart::coordinate(Axis::Y)))));
  add("momentum_sintheta_comm_z", "[p_z, sin theta] = i hbar rho r_z / r^3", 3,
      commutator_side(momentum(Axis::Z), sin_theta()),
      expr_side(ih * (OpExpr::rho_power(1) * coord_over(Axis::Z, -3, 0))));

  add("momentum_cosphi_comm_x", "[p_x, cos phi] = -i hbar r_y^2 / rho^3", 3,
      commutator_side(momentum(Axis::X), cos_phi()), expr_side(-ih * sq_over(Axis::Y, 0, -3)));
  add("momentum_cosphi_comm_y", "[p_y, cos phi] = i hbar r_x r_y / rho^3", 3,
      commutator_side(momentum(Axis::Y), cos_phi()), expr_side(ih * xy_over(0, -3)));
  add("momentum_cosphi_comm_z", "[p_z, cos phi] = 0", 3,
      commutator_side(momentum(Axis::Z), cos_phi()), zero_side());

  add("momentum_sinphi_comm_x", "[p_x, sin phi] = i hbar r_x r_y / rho^3", 3,
      commutator_side(momentum(Axis::X), sin_phi()), expr_side(ih * xy_over(0, -3)));
  add("momentum_sinphi_comm_y", "[p_y, sin phi] = -i hbar r_x^2 / rho^3", 3,
      commutator_side(momentum(Axis::Y), sin_phi()), expr_side(-ih * sq_over(Axis::X, 0, -3)));
  add("momentum_sinphi_comm_z", "[p_z, sin phi] = 0", 3,
      commutator_side(momentum(Axis::Z), sin_phi()), zero_side());

  // Quantum-corrected spherical momenta: symmetrized construction vs the
  // explicit forms.
  auto symmetrization_side = [&](const std::array<PositionPart, 3>& e) {
    OracleSide s;
    for (Axis a : axes) {
      const PositionPart& comp = e[static_cast<int>(a)];
      if (comp.is_zero()) continue;
      OpExpr ce = OpExpr::from_position(comp);
      s.products.push_back({UnitCoeff::rational(Rational(1, 2)), {ce, momentum(a)}});
      s.products.push_back({UnitCoeff::rational(Rational(1, 2)), {momentum(a), ce}});
    }
    return s;
  };

  add("radial_mom", "p_r = e_r.p - i hbar / r (symmetrized)", 3,
      symmetrization_side(unit_vector_radial()), expr_side(radial_momentum_explicit()));
  add("theta_mom", "p_theta = e_theta.p - i hbar cot(theta)/(2r) (symmetrized)", 3,
      symmetrization_side(unit_vector_theta()), expr_side(theta_momentum_explicit()));
  add("phi_mom", "p_phi = e_phi.p, no quantum correction (symmetrized)", 3,
      symmetrization_side(unit_vector_phi()), expr_side(phi_momentum_explicit()));

  const OpExpr pr = radial_momentum_explicit();
  const OpExpr pt = theta_momentum_explicit();
  const OpExpr pp = phi_momentum_explicit();

  // Spherical momenta against position operators.
  add("radial_momentum_r_comm", "[p_r, r] = -i hbar", 3,
      commutator_side(pr, OpExpr::r_power(1)), expr_side(OpExpr::scalar(-ih)));
  add("radial_momentum_rho_comm", "[p_r, rho] = -i hbar sin theta", 3,
      commutator_side(pr, OpExpr::rho_power(1)), expr_side(-ih * sin_theta()));
  add("radial_momentum_costheta_comm", "[p_r, cos theta] = 0", 3,
      commutator_side(pr, cos_theta()), zero_side());
  add("radial_momentum_sintheta_comm", "[p_r, sin theta] = 0", 3,
      commutator_side(pr, sin_theta()), zero_side());
  add("radial_momentum_cosphi_comm", "[p_r, cos phi] = 0", 3, commutator_side(pr, cos_phi()),
      zero_side());
  add("radial_momentum_sinphi_comm", "[p_r, sin phi] = 0", 3, commutator_side(pr, sin_phi()),
      zero_side());

  add("theta_momentum_r_comm", "[p_theta, r] = 0", 3, commutator_side(pt, OpExpr::r_power(1)),
      zero_side());
  add("theta_momentum_rho_comm", "[p_theta, rho] = -i hbar cos theta", 3,
      commutator_side(pt, OpExpr::rho_power(1)), expr_side(-ih * cos_theta()));
  add("theta_momentum_costheta_comm", "[p_theta, cos theta] = i hbar sin theta / r", 3,
      commutator_side(pt, cos_theta()), expr_side(ih * (sin_theta() * OpExpr::r_power(-1))));
  add("theta_momentum_sintheta_comm", "[p_theta, sin theta] = -i hbar cos theta / r", 3,
      commutator_side(pt, sin_theta()), expr_side(-ih * (cos_theta() * OpExpr::r_power(-1))));
  add("theta_momentum_cosphi_comm", "[p_theta, cos phi] = 0", 3, commutator_side(pt, cos_phi()),
      zero_side());
  add("theta_momentum_sinphi_comm", "[p_theta, sin phi] = 0", 3, commutator_side(pt, sin_phi()),
      zero_side());

  add("phi_momentum_r_comm", "[p_phi, r] = 0", 3, commutator_side(pp, OpExpr::r_power(1)),
      zero_side());
  add("phi_momentum_rho_comm", "[p_phi, rho] = 0", 3, commutator_side(pp, OpExpr::rho_power(1)),
      zero_side());
  add("phi_momentum_costheta_comm", "[p_phi, cos theta] = 0", 3, commutator_side(pp, cos_theta()),
      zero_side());
  add("phi_momentum_sintheta_comm", "[p_phi, sin theta] = 0", 3, commutator_side(pp, sin_theta()),
      zero_side());
  add("phi_momentum_cosphi_comm", "[p_phi, cos phi] = i hbar sin phi / rho", 3,
      commutator_side(pp, cos_phi()), expr_side(ih * (sin_phi() * OpExpr::rho_power(-1))));
  add("phi_momentum_sinphi_comm", "[p_phi, sin phi] = -i hbar cos phi / rho", 3,
      commutator_side(pp, sin_phi()), expr_side(-ih * (cos_phi() * OpExpr::rho_power(-1))));

  // Commutators between the spherical momentum components.
  add("radial_momentum_theta_momenum_comm", "[p_r, p_theta] = (i hbar / r) p_theta", 3,
      commutator_side(pr, pt),
      side({OracleProduct{ih, {OpExpr::r_power(-1), pt}}}));
  add("radial_momentum_phi_momenum_comm", "[p_r, p_phi] = (i hbar / r) p_phi", 3,
      commutator_side(pr, pp),
      side({OracleProduct{ih, {OpExpr::r_power(-1), pp}}}));
  add("theta_momentum_phi_momenum_comm", "[p_theta, p_phi] = i hbar cot(theta)/r p_phi", 3,
      commutator_side(pt, pp),
      side({OracleProduct{ih, {cot_theta(), OpExpr::r_power(-1), pp}}}));

  // Cartesian momentum decompositions.
  add("p_sub_z", "p_z = (p_r - i hbar/(2r)) cos theta - p_theta sin theta", 3,
      expr_side(momentum(Axis::Z)),
      side({OracleProduct{UnitCoeff::one(), {pr, cos_theta()}},
            OracleProduct{-ih_half, {OpExpr::r_power(-1), cos_theta()}},
            OracleProduct{UnitCoeff::rational(-1), {pt, sin_theta()}}}));
  add("ptheta_via_angular_momentum",
      "p_theta = (1/r)(L.e_phi + i hbar cot(theta)/2), components of L on the left", 3,
      expr_side(pt),
      side({OracleProduct{UnitCoeff::rational(-1),
                          {OpExpr::r_power(-1), angular_momentum(Axis::X), sin_phi()}},
            OracleProduct{UnitCoeff::one(),
                          {OpExpr::r_power(-1), angular_momentum(Axis::Y), cos_phi()}},
            OracleProduct{ih_half, {OpExpr::r_power(-1), cot_theta()}}}));

  // Kinetic-energy decomposition, no quantum correction in three dimensions.
  {
    OracleSide ke_lhs, ke_rhs;
    for (Axis a : axes)
      ke_lhs.products.push_back({UnitCoeff::one(), {momentum(a), momentum(a)}});
    ke_rhs.products.push_back({UnitCoeff::one(), {pr, pr}});
    for (Axis a : axes)
      ke_rhs.products.push_back(
          {UnitCoeff::one(), {OpExpr::r_power(-2), angular_momentum(a), angular_momentum(a)}});
    add("ke_3d", "px^2 + py^2 + pz^2 = p_r^2 + L.L / r^2", 3, ke_lhs, ke_rhs);
  }

  // Plane polar versions.
  const OpExpr prho = planar_radial_momentum_explicit();
  auto planar_symmetrization_side = [&]() {
    OracleSide s;
    auto e = unit_vector_planar_radial();
    for (Axis a : {Axis::X, Axis::Y}) {
      OpExpr ce = OpExpr::from_position(e[static_cast<int>(a)]);
      s.products.push_back({UnitCoeff::rational(Rational(1, 2)), {ce, momentum(a)}});
      s.products.push_back({UnitCoeff::rational(Rational(1, 2)), {momentum(a), ce}});
    }
    return s;
  };

  add("radial_momentum_2d", "p_rho = e_rho.p - i hbar/(2 rho) (symmetrized)", 2,
      planar_symmetrization_side(), expr_side(prho));
  add("phi_momentum_2d", "p_phi = -sin phi p_x + cos phi p_y", 2,
      symmetrization_side(unit_vector_phi()), expr_side(pp));
  add("radial_momentum_rho_com_2d", "[p_rho, rho] = -i hbar", 2,
      commutator_side(prho, OpExpr::rho_power(1)), expr_side(OpExpr::scalar(-ih)));
  add("radial_momentum_cosphi_comm_2d", "[p_rho, cos phi] = 0", 2,
      commutator_side(prho, cos_phi()), zero_side());
  add("radial_momentum_sinphi_comm_2d", "[p_rho, sin phi] = 0", 2,
      commutator_side(prho, sin_phi()), zero_side());
  add("phi_momentum_cosphi_comm_2d", "[p_phi, cos phi] = i hbar sin phi / rho", 2,
      commutator_side(pp, cos_phi()), expr_side(ih * (sin_phi() * OpExpr::rho_power(-1))));
  add("phi_momentum_sinphi_comm_2d", "[p_phi, sin phi] = -i hbar cos phi / rho", 2,
      commutator_side(pp, sin_phi()), expr_side(-ih * (cos_phi() * OpExpr::rho_power(-1))));
  add("phi_momentum_rho_comm_2d", "[p_phi, rho] = 0", 2,
      commutator_side(pp, OpExpr::rho_power(1)), zero_side());
  add("radial_momentum_phi_momentum_comm_2d", "[p_rho, p_phi] = (i hbar / rho) p_phi", 2,
      commutator_side(prho, pp),
      side({OracleProduct{ih, {OpExpr::rho_power(-1), pp}}}));

  add("px_decomposition_2d", "p_x = (p_rho - i hbar/(2 rho)) cos phi - p_phi sin phi", 2,
      expr_side(momentum(Axis::X)),
      side({OracleProduct{UnitCoeff::one(), {prho, cos_phi()}},
            OracleProduct{-ih_half, {OpExpr::rho_power(-1), cos_phi()}},
            OracleProduct{UnitCoeff::rational(-1), {pp, sin_phi()}}}));
  add("py_decomposition_2d", "p_y = (p_rho - i hbar/(2 rho)) sin phi + p_phi cos phi", 2,
      expr_side(momentum(Axis::Y)),
      side({OracleProduct{UnitCoeff::one(), {prho, sin_phi()}},
            OracleProduct{-ih_half, {OpExpr::rho_power(-1), sin_phi()}},
            OracleProduct{UnitCoeff::one(), {pp, cos_phi()}}}));

  // Kinetic-energy decomposition with the -hbar^2/4 quantum correction.
  {
    OracleSide ke_lhs, ke_rhs;
    for (Axis a : {Axis::X, Axis::Y})
      ke_lhs.products.push_back({UnitCoeff::one(), {momentum(a), momentum(a)}});
    ke_rhs.products.push_back({UnitCoeff::one(), {prho, prho}});
    ke_rhs.products.push_back({UnitCoeff::one(),
                               {OpExpr::rho_power(-2), angular_momentum(Axis::Z),
                                angular_momentum(Axis::Z)}});
    ke_rhs.products.push_back({UnitCoeff(Rational(-1, 4), 0, 0, 2, 0, 0),
                               {OpExpr::rho_power(-2)}});
    add("ke_2d", "px^2 + py^2 = p_rho^2 + (L_z^2 - hbar^2/4) / rho^2", 2, ke_lhs, ke_rhs);
  }

  return cat;
}

}  // namespace detail

inline const std::vector<CatalogIdentity>& identity_catalog() {
  static const std::vector<CatalogIdentity> cat = detail::build_catalog();
  return cat;
}

inline const CatalogIdentity& find_identity(std::string_view id) {
  for (const auto& c : identity_catalog())
    if (c.id == id) return c;
  throw CatalogError("unknown identity id: " + std::string(id));
}

/// Residual of a named catalog identity; holds iff the normal form of
/// LHS - RHS is exactly zero.
inline IdentityReport check_identity(std::string_view id) {
  const CatalogIdentity& c = find_identity(id);
  OpExpr residual = c.lhs.to_expr() - c.rhs.to_expr();
  return {residual.is_zero(), std::move(residual)};
}

}  // namespace opalg
