#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "opalg/ladder.hpp"
#include "opalg/laguerre.hpp"

namespace opalg::wavefn {

/// Closed-form bound state of the 2D/3D Coulomb problem. The radial part is
///
///   R(r) = norm * sum_{k=sector}^{n-1} coeffs[k-sector] u^k * exp(-u/2),
///   u = 2 r / (nu a0),  nu = n (3D) or n-1/2 (2D),
///
/// with exact rational coefficients and an exact algebraic amplitude. Numeric
/// evaluation uses a0 = 1 (hbar = mu = e = 1).
struct Wavefunction {
  int dim = 3;
  int n = 1;
  int sector = 0;  // l in 3D, |m| in 2D
  int m = 0;       // z-projection (3D) or signed angular index (2D)
  Rational nu = 1;
  std::vector<Rational> coeffs;  // index j corresponds to u^(sector + j)
  AlgebraicConstant norm;

  double decay_rate() const { return 1.0 / to_double(nu); }

  /// Radial factor only (no angular part).
  double radial(double r) const {
    double u = 2.0 * r / to_double(nu);
    double poly = 0.0;
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
      poly = poly * u + to_double(coeffs[j]);
    return norm.to_double() * poly * std::pow(u, sector) * std::exp(-u / 2.0);
  }

  std::complex<double> evaluate(double r, double theta, double phi) const {
    if (dim == 3) return radial(r) * laguerre::spherical_harmonic(sector, m, theta, phi);
    return radial(r) * laguerre::angular_eigenfunction_2d(m, phi);
  }
  std::complex<double> evaluate(double rho, double phi) const {
    return evaluate(rho, 0.0, phi);
  }
};

/// Top-of-ladder radial state phi_n = <r|n,n-1>:
///   (2/(n a0))^(n+1/2) r^(n-1) e^(-r/(n a0)) / sqrt((2n)!)           in 3D,
///   (2/((n-1/2) a0))^n rho^(n-1) e^(-rho/((n-1/2) a0)) / sqrt((2n-1)!) in 2D,
/// rewritten in the u basis above.
inline Wavefunction top_state(int n, int dim) {
  ladder::require_dim(dim);
  if (n < 1) throw std::invalid_argument("top_state: n must be positive");
  Wavefunction wf;
  wf.dim = dim;
  wf.n = n;
  wf.sector = n - 1;
  wf.m = dim == 2 ? n - 1 : 0;
  wf.nu = dim == 3 ? Rational(n) : Rational(2 * n - 1, 2);
  wf.coeffs = {Rational(1)};
  if (dim == 3) {
    // (2/nu)^(3/2) / sqrt((2n)!) * a0^(-3/2)
    wf.norm = AlgebraicConstant::sqrt_rational(pow_rational(Rational(2) / wf.nu, 3) /
                                               Rational(factorial(2 * n)))
                  .times_a0_half_power(-3);
  } else {
    // (2/nu) / sqrt((2n-1)!) * a0^(-1)
    wf.norm = (AlgebraicConstant::from_rational(Rational(2) / wf.nu) *
               AlgebraicConstant::sqrt_rational(Rational(1) / Rational(factorial(2 * n - 1))))
                  .times_a0_half_power(-2);
  }
  return wf;
}

/// Ladder-route assembly: C_nl * B^dag-string * top state, phases dropped.
inline Wavefunction ladder_route_wavefunction(int n, int sector, int m, int dim) {
  ladder::ChainResult chain = ladder::run_chain(dim, n, sector);
  ladder::NormConstant nc = ladder::compute_norm(dim, n, sector);
  int d = chain.chain_length();

  // |scale|: the chain prefactor with the i^d phase removed.
  UnitCoeff mag = chain.scale;
  mag.i_pow = 0;
  mag.value = abs(mag.value);
  AlgebraicConstant amp = nc.constant * AlgebraicConstant::from_coeff(mag) * top_state(n, dim).norm;

  Wavefunction wf;
  wf.dim = dim;
  wf.n = n;
  wf.sector = sector;
  wf.m = m;
  wf.nu = chain.nu();
  wf.norm = amp;
  wf.coeffs.reserve(d + 1);
  // Dropping the full (-i)^d phase also flips the b_j signs for odd d,
  // making the wavefunction positive at small r.
  for (int j = 0; j <= d; ++j)
    wf.coeffs.push_back(d % 2 ? -chain.b_coeffs[j] : chain.b_coeffs[j]);
  return wf;
}

/// Closed-form assembly via the Laguerre polynomial.
inline Wavefunction closed_form_wavefunction(int n, int sector, int m, int dim) {
  Wavefunction wf;
  wf.dim = dim;
  wf.n = n;
  wf.sector = sector;
  wf.m = m;
  wf.nu = dim == 3 ? Rational(n) : Rational(2 * n - 1, 2);
  int d = n - sector - 1;
  int alpha = dim == 3 ? 2 * sector + 1 : 2 * sector;
  wf.coeffs = laguerre::laguerre(alpha, d).coeffs;
  if (dim == 3) {
    // (2/(n a0))^(3/2) sqrt((n-l-1)! / (2n (n+l)!))
    wf.norm = AlgebraicConstant::sqrt_rational(
                  pow_rational(Rational(2) / wf.nu, 3) * Rational(factorial(d)) /
                  (Rational(2 * n) * Rational(factorial(n + sector))))
                  .times_a0_half_power(-3);
  } else {
    // (2/((n-1/2) a0)) sqrt((n-|m|-1)! / ((2n-1) (n+|m|-1)!))
    wf.norm = (AlgebraicConstant::from_rational(Rational(2) / wf.nu) *
               AlgebraicConstant::sqrt_rational(Rational(factorial(d)) /
                                                (Rational(2 * n - 1) *
                                                 Rational(factorial(n + sector - 1)))))
                  .times_a0_half_power(-2);
  }
  return wf;
}

struct TwoRouteReport {
  Wavefunction closed;
  Wavefunction laddered;
  bool equal = false;
};

/// Compares the two assembly routes coefficient by coefficient (as exact
/// products amplitude * coefficient, which is independent of how the overall
/// amplitude is split).
inline TwoRouteReport two_route_agreement(int n, int sector, int m, int dim) {
  TwoRouteReport rep;
  rep.closed = closed_form_wavefunction(n, sector, m, dim);
  rep.laddered = ladder_route_wavefunction(n, sector, m, dim);
  rep.equal = rep.closed.coeffs.size() == rep.laddered.coeffs.size();
  if (rep.equal)
    for (size_t j = 0; j < rep.closed.coeffs.size(); ++j) {
      AlgebraicConstant a = rep.closed.norm * AlgebraicConstant::from_rational(rep.closed.coeffs[j]);
      AlgebraicConstant b =
          rep.laddered.norm * AlgebraicConstant::from_rational(rep.laddered.coeffs[j]);
      if (!(a == b)) {
        rep.equal = false;
        break;
      }
    }
  return rep;
}

/// Fully assembled bound state. Both assembly routes are evaluated and must
/// agree exactly; the closed-form layout is returned.
inline Wavefunction full_wavefunction(int n, int sector, int m, int dim) {
  ladder::require_dim(dim);
  if (n < 1) throw std::out_of_range("full_wavefunction: n must be positive");
  if (sector < 0 || sector > n - 1) throw std::out_of_range("full_wavefunction: sector out of range");
  if (dim == 3 && std::abs(m) > sector)
    throw std::out_of_range("full_wavefunction: |m| must not exceed l");
  if (dim == 2 && std::abs(m) != sector)
    throw std::out_of_range("full_wavefunction: 2D sector must equal |m|");
  TwoRouteReport rep = two_route_agreement(n, sector, m, dim);
  if (!rep.equal)
    throw std::logic_error("full_wavefunction: assembly routes disagree");
  return rep.closed;
}

}  // namespace opalg::wavefn
