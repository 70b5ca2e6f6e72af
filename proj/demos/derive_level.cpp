// Minimal library walkthrough: derive the n = 3 shell of the 3D Coulomb
// problem from the commutation relation up, and print what the ladder gives.

#include <iostream>

#include "opalg/verify.hpp"

int main() {
  using namespace opalg;

  // The radial momentum comes out of the symmetrized projection with its
  // quantum correction; the construction itself cross-checks the closed form.
  OpExpr pr = ops::build_spherical_momentum(ops::Spherical::Radial);
  std::cout << "p_r = " << pr.str() << "\n\n";

  std::cout << "[p_r, r] = " << commutator(pr, OpExpr::r_power(1)).str() << "\n\n";

  const int n = 3;
  for (int l = 0; l < n; ++l) {
    ladder::ChainResult chain = ladder::run_chain(3, n, l);
    ladder::NormConstant norm = ladder::compute_norm(3, n, l);
    ladder::LaguerreIdentification li = ladder::laguerre_identify(chain);
    std::cout << "|" << n << "," << l << ">  b =";
    for (const auto& b : chain.b_coeffs) std::cout << " " << fraction_string(b);
    std::cout << "   C = " << norm.constant.str() << "   ~ L^(" << li.alpha << ")_"
              << li.degree << " with C' = " << fraction_string(li.proportionality) << "\n";

    auto wf = wavefn::full_wavefunction(n, l, 0, 3);
    std::cout << "      |psi|^2 norm = " << verify::radial_overlap(wf, wf).value
              << ", radial nodes = " << verify::node_count(wf) << "\n";
  }
  std::cout << "\nE(n=3) = " << fraction_string(ladder::energy_in_coulomb_units(3, n))
            << " e^2/a0\n";
  return 0;
}
