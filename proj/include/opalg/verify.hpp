#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "opalg/identities.hpp"
#include "opalg/quadrature.hpp"
#include "opalg/wavefn.hpp"

namespace opalg::verify {

struct QuadratureSpec {
  enum class Kind { GaussExponential, Adaptive };
  Kind kind = Kind::GaussExponential;
  int nodes = 48;
  double tolerance = 1e-10;
};

struct ResidualReport {
  std::string case_id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// ---------------------------------------------------------------------------
// Differential-representation oracle. Test functions are finite sums
//   c * x^a y^b z^c * r^s * rho^t  (s, t integers),
// a class closed under partial derivatives and under multiplication by the
// engine's position fractions. Momenta act as p_a = -i hbar d/da with
// hbar = 1. This realizes operators in exactly the representation the exact
// layer never uses, which is what makes it an independent check.
// ---------------------------------------------------------------------------

class TestFn {
 public:
  using Key = std::array<int, 5>;  // a, b, c, s, t

  TestFn() = default;

  static TestFn term(std::complex<double> coeff, int a, int b, int c, int s, int t) {
    TestFn f;
    f.add({a, b, c, s, t}, coeff);
    return f;
  }

  bool empty() const { return terms_.empty(); }
  const std::map<Key, std::complex<double>>& terms() const { return terms_; }

  TestFn& operator+=(const TestFn& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  friend TestFn operator+(TestFn a, const TestFn& b) { return a += b; }
  friend TestFn operator*(std::complex<double> c, const TestFn& f) {
    TestFn out;
    for (const auto& [k, v] : f.terms_) out.add(k, c * v);
    return out;
  }

  friend TestFn operator*(const TestFn& f, const TestFn& g) {
    TestFn out;
    for (const auto& [kf, cf] : f.terms_)
      for (const auto& [kg, cg] : g.terms_)
        out.add({kf[0] + kg[0], kf[1] + kg[1], kf[2] + kg[2], kf[3] + kg[3], kf[4] + kg[4]},
                cf * cg);
    return out;
  }

  TestFn derivative(Axis ax) const {
    TestFn out;
    int idx = static_cast<int>(ax);
    for (const auto& [k, c] : terms_) {
      // polynomial part
      if (k[idx] > 0) {
        Key kk = k;
        kk[idx] -= 1;
        out.add(kk, c * double(k[idx]));
      }
      // r^s part: d/da r^s = s a r^(s-2)
      if (k[3] != 0) {
        Key kk = k;
        kk[idx] += 1;
        kk[3] -= 2;
        out.add(kk, c * double(k[3]));
      }
      // rho^t part: no z dependence
      if (k[4] != 0 && ax != Axis::Z) {
        Key kk = k;
        kk[idx] += 1;
        kk[4] -= 2;
        out.add(kk, c * double(k[4]));
      }
    }
    return out;
  }

  std::complex<double> eval(double x, double y, double z) const {
    double r = std::sqrt(x * x + y * y + z * z);
    double rho = std::sqrt(x * x + y * y);
    std::complex<double> acc = 0.0;
    for (const auto& [k, c] : terms_) {
      double mag = std::pow(x, k[0]) * std::pow(y, k[1]) * std::pow(z, k[2]) *
                   std::pow(r, k[3]) * std::pow(rho, k[4]);
      acc += c * mag;
    }
    return acc;
  }

 private:
  std::map<Key, std::complex<double>> terms_;

  void add(const Key& k, std::complex<double> c) {
    if (c == std::complex<double>(0.0, 0.0)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == std::complex<double>(0.0, 0.0)) terms_.erase(it);
    }
  }
};

inline TestFn position_fraction_to_fn(const PositionPart& p) {
  TestFn out;
  for (const auto& [m, c] : p.terms())
    out += TestFn::term(c.to_complex(), m.x, m.y, m.z, m.r - 2 * p.r2_den(),
                        m.rho - 2 * p.rho2_den());
  return out;
}

/// Applies a normal-ordered expression as a differential operator.
inline TestFn apply_operator(const OpExpr& e, const TestFn& f) {
  TestFn out;
  for (const auto& [w, pos] : e.terms()) {
    TestFn g = f;
    const std::complex<double> mi(0.0, -1.0);  // -i hbar, hbar = 1
    for (int j = 0; j < w.x; ++j) g = mi * g.derivative(Axis::X);
    for (int j = 0; j < w.y; ++j) g = mi * g.derivative(Axis::Y);
    for (int j = 0; j < w.z; ++j) g = mi * g.derivative(Axis::Z);
    out += position_fraction_to_fn(pos) * g;
  }
  return out;
}

/// Applies one side of a catalog identity compositionally, factor by factor,
/// never invoking the symbolic product that is under test.
inline TestFn apply_side(const OracleSide& side, const TestFn& f) {
  TestFn out;
  for (const auto& prod : side.products) {
    TestFn g = f;
    for (auto it = prod.factors.rbegin(); it != prod.factors.rend(); ++it)
      g = apply_operator(*it, g);
    out += prod.coeff.to_complex() * g;
  }
  return out;
}

struct SamplePoint {
  double x, y, z;
};

/// Random points bounded away from r = 0, rho = 0 and the polar axis.
inline std::vector<SamplePoint> sample_points(int dim, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.35, 1.6);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<SamplePoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    auto draw = [&] { return (sign(rng) ? 1.0 : -1.0) * mag(rng); };
    double x = draw(), y = draw();
    double z = dim == 3 ? draw() : 0.0;
    pts.push_back({x, y, z});
  }
  return pts;
}

inline std::vector<TestFn> sample_functions(int dim, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> expo(0, 2);
  std::uniform_int_distribution<int> radk(-3, 3);
  std::uniform_int_distribution<int> coeff(1, 4);
  std::vector<TestFn> fns;
  fns.reserve(count);
  for (int i = 0; i < count; ++i) {
    TestFn f;
    for (int t = 0; t < 3; ++t) {
      int a = expo(rng), b = expo(rng);
      int c = dim == 3 ? expo(rng) : 0;
      int s = dim == 3 ? radk(rng) : 0;
      int k = radk(rng);
      f += TestFn::term(double(coeff(rng)), a, b, c, s, k);
    }
    fns.push_back(f);
  }
  return fns;
}

/// Max relative deviation between the two sides of an identity, realized as
/// differential operators over seeded random test functions and points.
inline double oracle_residual(const OracleSide& lhs, const OracleSide& rhs, int dim,
                              std::uint64_t seed) {
  auto pts = sample_points(dim, seed, 6);
  auto fns = sample_functions(dim, seed ^ 0x9e3779b97f4a7c15ull, 4);
  double worst_abs = 0.0, scale = 1.0;
  for (const auto& f : fns) {
    TestFn l = apply_side(lhs, f);
    TestFn r = apply_side(rhs, f);
    for (const auto& p : pts) {
      std::complex<double> lv = l.eval(p.x, p.y, p.z);
      std::complex<double> rv = r.eval(p.x, p.y, p.z);
      worst_abs = std::max(worst_abs, std::abs(lv - rv));
      // Scale from the individual products, so identities with zero right
      // side still normalize sensibly.
      for (const auto& prod : lhs.products) {
        TestFn g = f;
        for (auto it = prod.factors.rbegin(); it != prod.factors.rend(); ++it)
          g = apply_operator(*it, g);
        scale = std::max(scale, std::abs(prod.coeff.to_complex() * g.eval(p.x, p.y, p.z)));
      }
    }
  }
  return worst_abs / scale;
}

inline ResidualReport differential_commutator_oracle(const CatalogIdentity& ident,
                                                     std::uint64_t seed, double tol = 1e-9) {
  double res = oracle_residual(ident.lhs, ident.rhs, ident.dim, seed);
  return {ident.id, res, tol, res < tol};
}

inline ResidualReport differential_commutator_oracle(std::string_view id, std::uint64_t seed,
                                                     double tol = 1e-9) {
  return differential_commutator_oracle(find_identity(id), seed, tol);
}

// ---------------------------------------------------------------------------
// Wavefunction oracles in the position representation.
// ---------------------------------------------------------------------------

/// Non-exponential radial factor of a wavefunction: norm * sum c_k u^k.
inline double radial_poly_factor(const wavefn::Wavefunction& wf, double r) {
  double u = 2.0 * r / to_double(wf.nu);
  double poly = 0.0;
  for (int j = static_cast<int>(wf.coeffs.size()) - 1; j >= 0; --j)
    poly = poly * u + to_double(wf.coeffs[j]);
  return wf.norm.to_double() * poly * std::pow(u, wf.sector);
}

/// <R_a | R_b> with measure r^2 dr (3D) or rho drho (2D), by Gauss-type
/// quadrature exact for the polynomial content.
inline quad::Estimate radial_overlap(const wavefn::Wavefunction& a, const wavefn::Wavefunction& b,
                                     const QuadratureSpec& spec = {}) {
  double lambda = 1.0 / to_double(a.nu) + 1.0 / to_double(b.nu);
  int measure = a.dim - 1;
  auto poly = [&](double r) {
    return radial_poly_factor(a, r) * radial_poly_factor(b, r) * std::pow(r, measure);
  };
  if (spec.kind == QuadratureSpec::Kind::Adaptive) {
    auto integrand = [&](double r) { return poly(r) * std::exp(-lambda * r); };
    // Panelized so the initial estimates see the localized integrand; the
    // window must reach far enough that u^(2n) e^-u tails are negligible.
    double hi = 90.0 / lambda;
    const int panels = 64;
    double v = 0.0;
    for (int k = 0; k < panels; ++k)
      v += quad::adaptive_simpson(integrand, hi * k / panels, hi * (k + 1) / panels,
                                  1e-13 / panels);
    return {v, 1e-12 * std::max(1.0, std::abs(v))};
  }
  return quad::integrate_exponential_est(poly, lambda, spec.nodes);
}

/// Gram matrix of the radial states n = sector+1 .. n_max at fixed sector.
inline std::vector<std::vector<double>> orthonormality_matrix(int dim, int sector, int n_max,
                                                              const QuadratureSpec& spec = {}) {
  std::vector<wavefn::Wavefunction> states;
  for (int n = sector + 1; n <= n_max; ++n)
    states.push_back(wavefn::full_wavefunction(n, sector, dim == 2 ? sector : 0, dim));
  size_t count = states.size();
  std::vector<std::vector<double>> gram(count, std::vector<double>(count, 0.0));
  for (size_t i = 0; i < count; ++i)
    for (size_t j = i; j < count; ++j)
      gram[i][j] = gram[j][i] = radial_overlap(states[i], states[j], spec).value;
  return gram;
}

/// Radial eigenvalue-equation residual using analytic derivatives of the
/// closed form. In 2D both equivalent formulations are evaluated: the plain
/// polar operator acting on psi and the half-integer effective potential
/// acting on v = sqrt(rho) psi; the report carries the worse of the two.
inline ResidualReport ode_residual(const wavefn::Wavefunction& wf, double energy_factor = 1.0,
                                   double tol = 1e-10) {
  double nu = to_double(wf.nu);
  double E = energy_factor * (-0.5 / (nu * nu));  // e^2/a0 units
  auto poly_derivs = [&](double u) {
    double p = 0.0, dp = 0.0, d2p = 0.0;
    for (int j = static_cast<int>(wf.coeffs.size()) - 1; j >= 0; --j) {
      d2p = d2p * u + 2.0 * dp;
      dp = dp * u + p;
      p = p * u + to_double(wf.coeffs[j]);
    }
    return std::array<double, 3>{p, dp, d2p};
  };
  int l = wf.sector;
  double amp = wf.norm.to_double();
  // R = amp * u^l P(u) e^(-u/2); derivatives w.r.t. r with u = 2r/nu.
  auto eval_R = [&](double r) {
    double u = 2.0 * r / nu;
    auto [p, dp, d2p] = poly_derivs(u);
    double ul = std::pow(u, l);
    double g = ul * p;
    double dg = ul * (dp + (l > 0 ? l * p / u : 0.0) - 0.5 * p);
    double d2g = ul * (d2p + (l > 0 ? 2.0 * l * dp / u : 0.0) +
                       (l > 0 ? l * (l - 1) * p / (u * u) : 0.0) - dp -
                       (l > 0 ? l * p / u : 0.0) + 0.25 * p);
    double s = 2.0 / nu;
    double ex = std::exp(-u / 2.0);
    return std::array<double, 3>{amp * g * ex, amp * s * dg * ex, amp * s * s * d2g * ex};
  };

  double worst = 0.0, psi_scale = 0.0;
  std::vector<double> grid;
  for (double r = 0.1; r <= 30.0; r += 0.1) grid.push_back(r);
  for (double r : grid) psi_scale = std::max(psi_scale, std::abs(eval_R(r)[0]));

  for (double r : grid) {
    auto [R, dR, d2R] = eval_R(r);
    double res;
    if (wf.dim == 3) {
      double h = -0.5 * (d2R + 2.0 * dR / r) + (0.5 * l * (l + 1) / (r * r) - 1.0 / r) * R;
      res = h - E * R;
    } else {
      int m = wf.sector;
      double h1 = -0.5 * (d2R + dR / r) + (0.5 * m * m / (r * r) - 1.0 / r) * R;
      double r1 = h1 - E * R;
      // v = sqrt(r) R form with the (m^2 - 1/4) effective potential
      double sr = std::sqrt(r);
      double v = sr * R;
      double d2v = -0.25 * R / (sr * r) + dR / sr + sr * d2R;
      double h2 = -0.5 * d2v + (0.5 * (m * m - 0.25) / (r * r) - 1.0 / r) * v;
      double r2 = (h2 - E * v) / sr;  // back to psi normalization
      res = std::max(std::abs(r1), std::abs(r2));
    }
    worst = std::max(worst, std::abs(res));
  }
  double rel = worst / (std::abs(E) * psi_scale);
  std::string id = (wf.dim == 3 ? "ode_3d_n" : "ode_2d_n") + std::to_string(wf.n) + "_s" +
                   std::to_string(wf.sector);
  return {id, rel, tol, rel < tol};
}

/// Sign changes of the radial polynomial on (0, inf), counted with exact
/// rational evaluation on a fine grid (Laguerre roots are simple and well
/// separated at these degrees).
inline int node_count(const wavefn::Wavefunction& wf) {
  int degree = static_cast<int>(wf.coeffs.size()) - 1;
  int alpha = wf.dim == 3 ? 2 * wf.sector + 1 : 2 * wf.sector;
  Rational u_max = Rational(4 * degree + 2 * alpha + 16);
  const int steps_per_unit = 64;
  BigInt total = numerator(u_max) * steps_per_unit / denominator(u_max);
  int count = 0;
  int prev_sign = 0;
  long long total_steps = total.convert_to<long long>();
  for (long long k = 1; k <= total_steps; ++k) {
    Rational u(k, steps_per_unit);
    Rational val = 0;
    for (int j = degree; j >= 0; --j) val = val * u + wf.coeffs[j];
    int s = val > 0 ? 1 : val < 0 ? -1 : 0;
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) ++count;
    prev_sign = s;
  }
  return count;
}

}  // namespace opalg::verify
