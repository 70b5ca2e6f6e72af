#pragma once

#include <array>
#include <stdexcept>

#include "opalg/op_expr.hpp"

namespace opalg::ops {

inline OpExpr momentum(Axis a) { return OpExpr::momentum(a); }
inline OpExpr coordinate(Axis a) { return OpExpr::coordinate(a); }

/// Trigonometric position operators, defined through the Cartesian operators:
/// cos(theta) = rz/r, sin(theta) = rho/r, cos(phi) = rx/rho, sin(phi) = ry/rho.
inline OpExpr cos_theta() {
  return OpExpr::from_position(PositionPart::coordinate(Axis::Z) * PositionPart::r_power(-1));
}
inline OpExpr sin_theta() {
  return OpExpr::from_position(PositionPart::rho_power(1) * PositionPart::r_power(-1));
}
inline OpExpr cos_phi() {
  return OpExpr::from_position(PositionPart::coordinate(Axis::X) * PositionPart::rho_power(-1));
}
inline OpExpr sin_phi() {
  return OpExpr::from_position(PositionPart::coordinate(Axis::Y) * PositionPart::rho_power(-1));
}
/// cot(theta) = rz/rho (not an independent generator).
inline OpExpr cot_theta() {
  return OpExpr::from_position(PositionPart::coordinate(Axis::Z) * PositionPart::rho_power(-1));
}

/// Orbital angular momentum L = r x p (component order is immaterial here
/// since the paired coordinates and momenta commute).
inline OpExpr angular_momentum(Axis a) {
  auto term = [](Axis rc, Axis pc) { return coordinate(rc) * momentum(pc); };
  switch (a) {
    case Axis::X: return term(Axis::Y, Axis::Z) - term(Axis::Z, Axis::Y);
    case Axis::Y: return term(Axis::Z, Axis::X) - term(Axis::X, Axis::Z);
    case Axis::Z: return term(Axis::X, Axis::Y) - term(Axis::Y, Axis::X);
  }
  throw std::logic_error("unreachable");
}

inline OpExpr angular_momentum_squared() {
  OpExpr acc = OpExpr::zero();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    OpExpr l = angular_momentum(a);
    acc += l * l;
  }
  return acc;
}

/// Unit-vector operator components for the spherical directions.
inline std::array<PositionPart, 3> unit_vector_radial() {
  auto inv_r = PositionPart::r_power(-1);
  return {PositionPart::coordinate(Axis::X) * inv_r, PositionPart::coordinate(Axis::Y) * inv_r,
          PositionPart::coordinate(Axis::Z) * inv_r};
}
inline std::array<PositionPart, 3> unit_vector_theta() {
  auto inv_r = PositionPart::r_power(-1);
  auto inv_rho = PositionPart::rho_power(-1);
  auto z = PositionPart::coordinate(Axis::Z);
  return {z * PositionPart::coordinate(Axis::X) * inv_r * inv_rho,
          z * PositionPart::coordinate(Axis::Y) * inv_r * inv_rho,
          -(PositionPart::rho_power(1) * inv_r)};
}
inline std::array<PositionPart, 3> unit_vector_phi() {
  auto inv_rho = PositionPart::rho_power(-1);
  return {-(PositionPart::coordinate(Axis::Y) * inv_rho),
          PositionPart::coordinate(Axis::X) * inv_rho, PositionPart::zero()};
}
inline std::array<PositionPart, 3> unit_vector_planar_radial() {
  auto inv_rho = PositionPart::rho_power(-1);
  return {PositionPart::coordinate(Axis::X) * inv_rho,
          PositionPart::coordinate(Axis::Y) * inv_rho, PositionPart::zero()};
}

/// Symmetrized projection (1/2)(e.p + p.e) of the momentum onto a unit-vector
/// operator; the source of the quantum corrections.
inline OpExpr symmetrized_momentum(const std::array<PositionPart, 3>& e) {
  OpExpr acc = OpExpr::zero();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const PositionPart& comp = e[static_cast<int>(a)];
    if (comp.is_zero()) continue;
    OpExpr ep = OpExpr::from_position(comp) * momentum(a);
    OpExpr pe = momentum(a) * OpExpr::from_position(comp);
    acc += UnitCoeff::rational(Rational(1, 2)) * (ep + pe);
  }
  return acc;
}

enum class Spherical { Radial, Theta, Phi };
enum class Planar { Radial, Phi };

/// Explicit quantum-corrected forms.
inline OpExpr radial_momentum_explicit() {
  return sin_theta() * cos_phi() * momentum(Axis::X) + sin_theta() * sin_phi() * momentum(Axis::Y) +
         cos_theta() * momentum(Axis::Z) - UnitCoeff::i_hbar() * OpExpr::r_power(-1);
}
inline OpExpr theta_momentum_explicit() {
  return cos_theta() * cos_phi() * momentum(Axis::X) + cos_theta() * sin_phi() * momentum(Axis::Y) -
         sin_theta() * momentum(Axis::Z) -
         UnitCoeff(Rational(1, 2), 1, 0, 1, 0, 0) * (cot_theta() * OpExpr::r_power(-1));
}
inline OpExpr phi_momentum_explicit() {
  return -(sin_phi() * momentum(Axis::X)) + cos_phi() * momentum(Axis::Y);
}
inline OpExpr planar_radial_momentum_explicit() {
  return cos_phi() * momentum(Axis::X) + sin_phi() * momentum(Axis::Y) -
         UnitCoeff(Rational(1, 2), 1, 0, 1, 0, 0) * OpExpr::rho_power(-1);
}
inline OpExpr planar_phi_momentum_explicit() { return phi_momentum_explicit(); }

/// Builds p_r, p_theta or p_phi through the symmetrization route and checks it
/// against the explicit quantum-corrected form before returning.
inline OpExpr build_spherical_momentum(Spherical which) {
  OpExpr sym, explicit_form;
  switch (which) {
    case Spherical::Radial:
      sym = symmetrized_momentum(unit_vector_radial());
      explicit_form = radial_momentum_explicit();
      break;
    case Spherical::Theta:
      sym = symmetrized_momentum(unit_vector_theta());
      explicit_form = theta_momentum_explicit();
      break;
    case Spherical::Phi:
      sym = symmetrized_momentum(unit_vector_phi());
      explicit_form = phi_momentum_explicit();
      break;
  }
  if (!(sym == explicit_form))
    throw std::logic_error("spherical momentum: symmetrized and explicit forms disagree");
  return sym;
}

inline OpExpr build_planar_momentum(Planar which) {
  OpExpr sym, explicit_form;
  switch (which) {
    case Planar::Radial:
      sym = symmetrized_momentum(unit_vector_planar_radial());
      explicit_form = planar_radial_momentum_explicit();
      break;
    case Planar::Phi:
      sym = symmetrized_momentum(unit_vector_phi());
      explicit_form = planar_phi_momentum_explicit();
      break;
  }
  if (!(sym == explicit_form))
    throw std::logic_error("planar momentum: symmetrized and explicit forms disagree");
  return sym;
}

}  // namespace opalg::ops
