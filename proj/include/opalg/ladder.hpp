#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "opalg/laguerre.hpp"
#include "opalg/radial.hpp"

namespace opalg::ladder {

using radial::RadialOp;
using radial::RadialState;

inline void require_dim(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
}

/// Sector parameter kappa: l+1 in 3D, m+1/2 in 2D. The ladder operators,
/// sector energies and ground energies are all functions of kappa alone.
inline Rational kappa(int dim, int sector) {
  require_dim(dim);
  if (dim == 3) {
    if (sector < 0) throw std::invalid_argument("3D sector must be nonnegative");
    return Rational(sector + 1);
  }
  return Rational(2 * sector + 1, 2);
}

/// E_sector = -e^2 / (2 kappa^2 a0), expanded in the canonical unit basis.
inline UnitCoeff sector_energy(int dim, int sector) {
  Rational k = kappa(dim, sector);
  return UnitCoeff(-Rational(1, 2) / (k * k), 0, 0, 0, 0, 2) * UnitCoeff::a0_power(-1);
}

/// Level energy E_{n-1} = -e^2/(2 n^2 a0) (3D) or -e^2/(2 (n-1/2)^2 a0) (2D).
inline UnitCoeff energy(int dim, int n) {
  if (n < 1) throw std::invalid_argument("energy: n must be positive");
  return sector_energy(dim, n - 1);
}

/// E_{n-1} as a plain rational in units of e^2/a0.
inline Rational energy_in_coulomb_units(int dim, int n) {
  Rational k = kappa(dim, n - 1);
  return -Rational(1, 2) / (k * k);
}

inline int degeneracy(int dim, int n) { return dim == 3 ? n : 2 * n - 1; }

struct SectorHamiltonian {
  int dim;
  int sector;
  RadialOp op;
};

/// H_sector = p^2/(2 mu) + hbar^2 g /(2 mu x^2) - e^2/x with g = l(l+1) in 3D
/// and m^2 - 1/4 in 2D.
inline SectorHamiltonian sector_hamiltonian(int dim, int sector) {
  require_dim(dim);
  Rational g = dim == 3 ? Rational(sector) * Rational(sector + 1)
                        : Rational(sector) * Rational(sector) - Rational(1, 4);
  RadialOp op = UnitCoeff(Rational(1, 2), 0, 0, 0, -2, 0) *
                    (RadialOp::momentum() * RadialOp::momentum()) +
                UnitCoeff(g / 2, 0, 0, 2, -2, 0) * RadialOp::x_power(-2) -
                UnitCoeff(1, 0, 0, 0, 0, 2) * RadialOp::x_power(-1);
  return {dim, sector, op};
}

struct LadderOp {
  int dim;
  int sector;
  RadialOp lowering;  // B
  RadialOp raising;   // B^dagger
  UnitCoeff ground_energy;
};

/// B_sector = (1/sqrt(2 mu)) [ p - i hbar (1/(kappa a0) - kappa/x) ]. In 2D
/// negative sectors are allowed and satisfy B_{-|m|} = B^dagger_{|m|-1}.
inline LadderOp build_ladder(int dim, int sector) {
  Rational k = kappa(dim, sector);
  UnitCoeff pref = UnitCoeff::inv_sqrt_2mu();
  RadialOp lowering =
      pref * RadialOp::momentum() -
      (pref * UnitCoeff(Rational(1) / k, 1, 0, 1, 0, 0) * UnitCoeff::a0_power(-1)) *
          RadialOp::one() +
      (pref * UnitCoeff(k, 1, 0, 1, 0, 0)) * RadialOp::x_power(-1);
  return {dim, sector, lowering, lowering.dagger(), sector_energy(dim, sector)};
}

/// H_sector - (B^dagger B + E_sector); must be identically zero.
inline RadialOp check_factorization(int dim, int sector) {
  LadderOp b = build_ladder(dim, sector);
  SectorHamiltonian h = sector_hamiltonian(dim, sector);
  return h.op - (b.raising * b.lowering + RadialOp::scalar(b.ground_energy));
}

struct IntertwiningReport {
  RadialOp forward_residual;      // H_s B^dag_s - B^dag_s H_{s+1}
  RadialOp wrong_order_residual;  // B_s B^dag_s - (H_{s+1} - E_s)
  bool holds() const { return forward_residual.is_zero() && wrong_order_residual.is_zero(); }
};

inline IntertwiningReport check_intertwining(int dim, int sector) {
  LadderOp b = build_ladder(dim, sector);
  RadialOp hs = sector_hamiltonian(dim, sector).op;
  RadialOp hs1 = sector_hamiltonian(dim, sector + 1).op;
  RadialOp forward = hs * b.raising - b.raising * hs1;
  RadialOp wrong =
      b.lowering * b.raising - (hs1 - RadialOp::scalar(sector_energy(dim, sector)));
  return {forward, wrong};
}

/// Exact output of the ladder string B^dag_sector ... B^dag_{n-2} |n,n-1>,
/// factored as scale * (nu a0 / 2x)^(n-sector-1) * sum_j b_j (2x/(nu a0))^j.
struct ChainResult {
  int dim = 3;
  int n = 1;
  int sector = 0;
  std::vector<Rational> b_coeffs;  // j = 0 .. n-sector-1
  UnitCoeff scale;                 // (2 i hbar / (sqrt(2 mu) nu a0))^(n-sector-1)

  int chain_length() const { return n - sector - 1; }
  Rational nu() const { return dim == 3 ? Rational(n) : Rational(2 * n - 1, 2); }
};

/// Applies the raising string to the reference ket (right-to-left).
inline RadialState chain_state(int dim, int n, int sector) {
  RadialState state = RadialState::reference(n, dim);
  for (int k = n - 2; k >= sector; --k) state = apply(build_ladder(dim, k).raising, state);
  return state;
}

inline ChainResult run_chain(int dim, int n, int sector) {
  require_dim(dim);
  if (n < 1) throw std::invalid_argument("run_chain: n must be positive");
  if (sector < 0 || sector > n - 1) throw std::out_of_range("run_chain: sector out of range");

  RadialState state = chain_state(dim, n, sector);
  ChainResult res;
  res.dim = dim;
  res.n = n;
  res.sector = sector;
  Rational nu = res.nu();
  int d = res.chain_length();
  res.scale = (UnitCoeff::i_hbar() * UnitCoeff(Rational(2) / nu, 0, 0, 0, 0, 0) *
               UnitCoeff::inv_sqrt_2mu() * UnitCoeff::a0_power(-1))
                  .pow(d);

  for (const auto& [x_exp, c] : state.poly())
    if (x_exp < -d || x_exp > 0)
      throw std::logic_error("run_chain: unexpected Laurent exponent in chain state");

  res.b_coeffs.reserve(d + 1);
  for (int j = 0; j <= d; ++j) {
    // coefficient of x^(j-d) equals scale * b_j * (nu a0 / 2)^(d-j)
    UnitCoeff divisor = res.scale * UnitCoeff(pow_rational(nu / 2, d - j), 0, 0, 0, 0, 0) *
                        UnitCoeff::a0_power(d - j);
    res.b_coeffs.push_back((state.coeff(j - d).as_single() / divisor).to_rational());
  }
  return res;
}

struct RatioReport {
  bool holds = true;
  int first_bad_j = -1;
};

/// b_{j+1}/b_j = (j-n+l+1)/((j+1)(j+2l+2)) in 3D,
/// (j-n+m+1)/((j+1)(j+2m+1)) in 2D; checked cross-multiplied, exactly.
inline RatioReport check_coefficient_ratios(const ChainResult& c) {
  RatioReport rep;
  int d = c.chain_length();
  for (int j = 0; j + 1 <= d; ++j) {
    Rational num = Rational(j - c.n + c.sector + 1);
    Rational den = c.dim == 3 ? Rational(j + 1) * Rational(j + 2 * c.sector + 2)
                              : Rational(j + 1) * Rational(j + 2 * c.sector + 1);
    if (c.b_coeffs[j + 1] * den != c.b_coeffs[j] * num) {
      rep.holds = false;
      rep.first_bad_j = j;
      break;
    }
  }
  return rep;
}

struct NormConstant {
  int dim = 3;
  int n = 1;
  int sector = 0;
  UnitCoeff product_form;      // prod_{k=sector}^{n-2} (E_{n-1} - E_k) = 1/C^2
  UnitCoeff closed_form;       // the same quantity from the closed-form C
  AlgebraicConstant constant;  // C itself
  bool forms_match() const { return product_form == closed_form; }
};

/// Closed-form 1/C^2. 3D from the factorial expression; 2D from the
/// double-factorial expression with the (-1)!! = 1 convention.
inline UnitCoeff closed_form_inverse_square(int dim, int n, int sector) {
  int d = n - sector - 1;
  if (dim == 3) {
    int l = sector;
    Rational f = Rational(factorial(n + l)) * Rational(factorial(n - 1) * factorial(n - 1)) /
                 (Rational(factorial(2 * n - 1)) * Rational(factorial(n - l - 1)) *
                  Rational(factorial(l) * factorial(l)));
    UnitCoeff base = UnitCoeff(Rational(2 * n * n), 0, 0, 0, 0, -2) * UnitCoeff::a0_power(1);
    UnitCoeff csq = base.pow(d) * UnitCoeff::rational(f);
    return UnitCoeff::one() / csq;
  }
  int m = sector;
  Rational f = Rational(factorial(n + m - 1)) *
               Rational(double_factorial(2 * n - 3) * double_factorial(2 * n - 3)) /
               (Rational(factorial(2 * n - 2)) * Rational(factorial(n - m - 1)) *
                Rational(double_factorial(2 * m - 1) * double_factorial(2 * m - 1)));
  // (sqrt(a0) (n-1/2) / (sqrt(2) e))^(n-m-1), squared: (a0 (n-1/2)^2 / (2 e^2))^(n-m-1)
  Rational nu = Rational(2 * n - 1, 2);
  UnitCoeff base = UnitCoeff(nu * nu / 2, 0, 0, 0, 0, -2) * UnitCoeff::a0_power(1);
  UnitCoeff csq = base.pow(d) * UnitCoeff::rational(f);
  return UnitCoeff::one() / csq;
}

inline NormConstant compute_norm(int dim, int n, int sector) {
  require_dim(dim);
  NormConstant nc;
  nc.dim = dim;
  nc.n = n;
  nc.sector = sector;
  UnitCoeff e_level = energy(dim, n);
  UnitCoeff prod = UnitCoeff::one();
  for (int k = sector; k <= n - 2; ++k) {
    UnitCoeff diff = e_level;
    diff.value -= sector_energy(dim, k).value;  // same unit monomial
    prod = prod * diff;
  }
  nc.product_form = prod;
  nc.closed_form = closed_form_inverse_square(dim, n, sector);
  nc.constant = AlgebraicConstant::sqrt_coeff(prod).inverse();
  return nc;
}

struct LaguerreIdentification {
  int alpha = 0;
  int degree = 0;
  Rational proportionality;   // C' with b_j = C' a_j
  Rational proportionality_closed_form;
  Rational top_coeff;         // b_{n-sector-1} from the chain
  Rational top_coeff_formula; // the closed-form value it must equal
  bool coeffs_match = false;
  bool cprime_matches = false;
  bool top_matches = false;
  bool all_match() const { return coeffs_match && cprime_matches && top_matches; }
};

/// Identifies the chain polynomial with C' * L^(alpha)_degree, alpha = 2l+1
/// (3D) or 2m (2D), and cross-checks C' and the top coefficient against their
/// closed forms. Any mismatch is reported, never repaired.
inline LaguerreIdentification laguerre_identify(const ChainResult& c) {
  LaguerreIdentification rep;
  int d = c.chain_length();
  rep.alpha = c.dim == 3 ? 2 * c.sector + 1 : 2 * c.sector;
  rep.degree = d;
  laguerre::LaguerrePoly lp = laguerre::laguerre(rep.alpha, d);

  // a_0 = binom(d + alpha, d) is never zero.
  rep.proportionality = c.b_coeffs[0] / lp.coeffs[0];
  rep.coeffs_match = true;
  for (int j = 0; j <= d; ++j)
    if (c.b_coeffs[j] != rep.proportionality * lp.coeffs[j]) {
      rep.coeffs_match = false;
      break;
    }

  if (c.dim == 3) {
    int n = c.n, l = c.sector;
    rep.proportionality_closed_form = pow_rational(Rational(-1, 2), d) * Rational(factorial(l)) *
                                      Rational(factorial(d)) * Rational(factorial(2 * n - 1)) /
                                      (Rational(factorial(n + l)) * Rational(factorial(n - 1)));
    rep.top_coeff_formula = pow_rational(Rational(1, 2), d) * Rational(factorial(l)) *
                            Rational(factorial(2 * n - 1)) /
                            (Rational(factorial(n - 1)) * Rational(factorial(n + l)));
  } else {
    int n = c.n, m = c.sector;
    rep.proportionality_closed_form =
        pow_rational(Rational(-1), d) * Rational(factorial(d)) *
        Rational(factorial(2 * n - 2)) * Rational(double_factorial(2 * m - 1)) /
        (Rational(factorial(n + m - 1)) * Rational(double_factorial(2 * n - 3)));
    rep.top_coeff_formula = Rational(factorial(2 * n - 2)) *
                            Rational(double_factorial(2 * m - 1)) /
                            (Rational(factorial(n + m - 1)) * Rational(double_factorial(2 * n - 3)));
  }
  rep.top_coeff = c.b_coeffs[d];
  rep.cprime_matches = rep.proportionality == rep.proportionality_closed_form;
  rep.top_matches = rep.top_coeff == rep.top_coeff_formula;
  return rep;
}

struct NegativeMReport {
  bool operator_identity_holds = false;
  bool state_identity_holds = false;
  bool normalization_consistent = false;
  bool all_hold() const {
    return operator_identity_holds && state_identity_holds && normalization_consistent;
  }
};

/// 2D negative-m equivalence: the extended string B^dag_{-|m|} ... B^dag_{|m|-1}
/// collapses to prod_k (H_|m| - E_k), the extended chain state equals that
/// scalar times the positive-m chain state, and the product-form normalization
/// constants compensate exactly, so |n,-|m|> = |n,|m|>.
inline NegativeMReport check_negative_m(int n, int m_abs) {
  if (m_abs < 0 || m_abs > n - 1) throw std::out_of_range("check_negative_m: |m| out of range");
  NegativeMReport rep;

  RadialOp string_op = RadialOp::one();
  for (int s = -m_abs; s <= m_abs - 1; ++s) string_op = string_op * build_ladder(2, s).raising;

  RadialOp ham_product = RadialOp::one();
  RadialOp h = sector_hamiltonian(2, m_abs).op;
  UnitCoeff factor = UnitCoeff::one();
  UnitCoeff e_level = energy(2, n);
  for (int k = 0; k <= m_abs - 1; ++k) {
    ham_product = ham_product * (h - RadialOp::scalar(sector_energy(2, k)));
    UnitCoeff diff = e_level;
    diff.value -= sector_energy(2, k).value;
    factor = factor * diff;
  }
  rep.operator_identity_holds = string_op == ham_product;

  RadialState neg(2, n), pos(2, n);
  {
    RadialState state = RadialState::reference(n, 2);
    for (int k = n - 2; k >= -m_abs; --k) state = apply(build_ladder(2, k).raising, state);
    neg = state;
  }
  pos = chain_state(2, n, m_abs);
  rep.state_identity_holds = neg == factor * pos;

  // prod_{k=-|m|}^{n-2} (E_{n-1}-E_k) = factor^2 * prod_{k=|m|}^{n-2} (...),
  // i.e. C_{n,-|m|} * factor = C_{n,|m|}.
  UnitCoeff prod_neg = UnitCoeff::one();
  for (int k = -m_abs; k <= n - 2; ++k) {
    UnitCoeff diff = e_level;
    diff.value -= sector_energy(2, k).value;
    prod_neg = prod_neg * diff;
  }
  UnitCoeff prod_pos = compute_norm(2, n, m_abs).product_form;
  rep.normalization_consistent = prod_neg == factor * factor * prod_pos;
  return rep;
}

/// H_sector applied to the chain state minus E_{n-1} times it; identically
/// zero for every eigenstate of the ladder construction.
inline RadialState check_eigenstate(int dim, int n, int sector) {
  RadialState state = chain_state(dim, n, sector);
  RadialState lhs = apply(sector_hamiltonian(dim, sector).op, state);
  return lhs - energy(dim, n) * state;
}

}  // namespace opalg::ladder
