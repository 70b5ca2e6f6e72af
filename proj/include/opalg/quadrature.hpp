#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace opalg::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Laguerre rule for integrals of the form int_0^inf f(x) e^-x dx.
/// Newton iteration on L_n; weights via x_i / ((n+1) L_{n+1}(x_i))^2.
inline Rule gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  auto laguerre_pair = [n](double x) {
    // returns (L_n(x), L_{n+1}(x))
    double lm1 = 0.0, l = 1.0;
    for (int k = 0; k < n + 1; ++k) {
      double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
      lm1 = l;
      l = lp1;
    }
    return std::pair{lm1, l};
  };
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      z = 3.0 / (1.0 + 2.4 * n);
    else if (i == 1)
      z += 15.0 / (1.0 + 2.5 * n);
    else
      z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - rule.nodes[i - 2]);
    for (int it = 0; it < 100; ++it) {
      auto [ln, lnm1_unused] = laguerre_pair(z);
      // L'_n(x) = n (L_n(x) - L_{n-1}(x)) / x; recompute L_{n-1} inline.
      double lm1 = 0.0, l = 1.0;
      for (int k = 0; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 - z) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
      }
      double deriv = n * (l - lm1) / z;
      double step = l / deriv;
      z -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, z)) break;
      (void)ln;
    }
    auto [ln, lnp1] = laguerre_pair(z);
    (void)ln;
    rule.nodes[i] = z;
    rule.weights[i] = z / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
  }
  return rule;
}

/// Integral of poly(r) e^(-lambda r) dr over (0, inf), where poly is the
/// non-exponential factor of the integrand.
inline double integrate_exponential(const std::function<double(double)>& poly, double lambda,
                                    int nodes) {
  Rule rule = gauss_laguerre(nodes);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) acc += rule.weights[i] * poly(rule.nodes[i] / lambda);
  return acc / lambda;
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Same integral with an error estimate from node doubling.
inline Estimate integrate_exponential_est(const std::function<double(double)>& poly, double lambda,
                                          int nodes) {
  double coarse = integrate_exponential(poly, lambda, nodes);
  double fine = integrate_exponential(poly, lambda, 2 * nodes);
  return {fine, std::max(std::abs(fine - coarse), 1e-13 * std::abs(fine))};
}

/// Gauss-Legendre rule on [-1, 1].
inline Rule gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double step = p0 / pp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

/// Adaptive Simpson on [a, b]; the fallback rule kind for cross-checks.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 24) {
  auto simpson = [&f](double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  };
  std::function<double(double, double, double, double, int)> rec =
      [&](double lo, double hi, double whole, double eps, int d) -> double {
    double mid = 0.5 * (lo + hi);
    double left = simpson(lo, mid), right = simpson(mid, hi);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, left, eps / 2.0, d - 1) + rec(mid, hi, right, eps / 2.0, d - 1);
  };
  return rec(a, b, simpson(a, b), tol, depth);
}

}  // namespace opalg::quad
