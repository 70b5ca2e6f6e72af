// Command-line front end: exact spectra, ladder-chain derivations, sampled
// wavefunctions and the verification suites.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "opalg/serialize.hpp"

namespace {

using namespace opalg;
using io::Json;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct GridSpec {
  double lo = 0.05;
  double hi = 30.0;
  int count = 120;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' || g.count < 2 ||
      g.lo < 0 || g.hi <= g.lo)
    throw CLI::ValidationError("--grid expects rmin:rmax:count with rmin < rmax, count >= 2");
  return g;
}

int cmd_spectrum(int dim, int n_max, const std::string& format, const std::string& out_path) {
  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os << "n,sector_min,sector_max,energy_e2_per_a0,degeneracy\n";
    for (int n = 1; n <= n_max; ++n) {
      int smin = dim == 3 ? 0 : -(n - 1);
      os << n << "," << smin << "," << n - 1 << ","
         << fraction_string(ladder::energy_in_coulomb_units(dim, n)) << ","
         << ladder::degeneracy(dim, n) << "\n";
    }
    text = os.str();
  } else {
    Json rows = Json::array();
    for (int n = 1; n <= n_max; ++n) {
      rows.push_back(Json{{"n", n},
                          {"sector_min", dim == 3 ? 0 : -(n - 1)},
                          {"sector_max", n - 1},
                          {"energy_e2_per_a0",
                           fraction_string(ladder::energy_in_coulomb_units(dim, n))},
                          {"energy_numeric", to_double(ladder::energy_in_coulomb_units(dim, n))},
                          {"degeneracy", ladder::degeneracy(dim, n)}});
    }
    text = Json{{"dim", dim}, {"levels", std::move(rows)}}.dump(2) + "\n";
  }
  write_output(out_path, text);
  return 0;
}

int cmd_state(int dim, int n, int sector, const std::string& out_path) {
  int s = dim == 2 ? std::abs(sector) : sector;
  ladder::ChainResult chain = ladder::run_chain(dim, n, s);
  ladder::NormConstant norm = ladder::compute_norm(dim, n, s);
  ladder::LaguerreIdentification li = ladder::laguerre_identify(chain);

  Json checks;
  checks["factorization_zero"] = ladder::check_factorization(dim, s).is_zero();
  checks["intertwining_zero"] = ladder::check_intertwining(dim, s).holds();
  checks["eigenstate_zero"] = ladder::check_eigenstate(dim, n, s).poly_is_zero();
  checks["ratio_law"] = ladder::check_coefficient_ratios(chain).holds;
  checks["norm_forms_match"] = norm.forms_match();
  if (dim == 2) checks["negative_m_equivalence"] = ladder::check_negative_m(n, s).all_hold();

  Json doc{{"chain", io::chain_json(chain)},
           {"chain_state", io::radial_state_json(ladder::chain_state(dim, n, s))},
           {"norm", io::norm_json(norm)},
           {"laguerre", io::laguerre_id_json(li)},
           {"energy_e2_per_a0", fraction_string(ladder::energy_in_coulomb_units(dim, n))},
           {"checks", std::move(checks)}};
  write_output(out_path, doc.dump(2) + "\n");
  return 0;
}

int cmd_state_summary(int dim, int n_max, const std::string& out_path) {
  write_output(out_path, io::chain_summary_csv(dim, n_max));
  return 0;
}

int cmd_wavefunction(int dim, int n, int sector, int m, const GridSpec& grid, double theta,
                     double phi, const std::string& out_path) {
  int s = dim == 2 ? std::abs(m) : sector;
  wavefn::Wavefunction wf = wavefn::full_wavefunction(n, s, m, dim);
  std::ostringstream os;
  os << "# " << io::wavefunction_json(wf).dump() << "\n";
  if (dim == 3) {
    os << "r,theta,phi,re_psi,im_psi\n";
    for (int i = 0; i < grid.count; ++i) {
      double r = grid.lo + (grid.hi - grid.lo) * i / (grid.count - 1);
      auto v = wf.evaluate(r, theta, phi);
      os << io::double_string(r) << "," << io::double_string(theta) << ","
         << io::double_string(phi) << "," << io::double_string(v.real()) << ","
         << io::double_string(v.imag()) << "\n";
    }
  } else {
    os << "rho,phi,re_psi,im_psi\n";
    for (int i = 0; i < grid.count; ++i) {
      double rho = grid.lo + (grid.hi - grid.lo) * i / (grid.count - 1);
      auto v = wf.evaluate(rho, phi);
      os << io::double_string(rho) << "," << io::double_string(phi) << ","
         << io::double_string(v.real()) << "," << io::double_string(v.imag()) << "\n";
    }
  }
  write_output(out_path, os.str());
  return 0;
}

int cmd_commutator(const std::string& id, bool list, const std::string& format,
                   const std::string& out_path) {
  std::ostringstream os;
  if (list) {
    for (const auto& c : identity_catalog()) os << c.id << "\n";
    write_output(out_path, os.str());
    return 0;
  }
  const CatalogIdentity& ident = find_identity(id);
  IdentityReport rep = check_identity(id);
  if (format == "json") {
    Json doc{{"id", ident.id},
             {"identity", ident.description},
             {"dim", ident.dim},
             {"lhs", io::op_expr_json(ident.lhs.to_expr())},
             {"rhs", io::op_expr_json(ident.rhs.to_expr())},
             {"residual", io::op_expr_json(rep.residual)},
             {"holds", rep.holds}};
    write_output(out_path, doc.dump(2) + "\n");
    return rep.holds ? 0 : 1;
  }
  os << "id:          " << ident.id << "\n";
  os << "identity:    " << ident.description << "\n";
  os << "dimension:   " << ident.dim << "\n";
  os << "lhs:         " << ident.lhs.to_expr().str() << "\n";
  os << "rhs:         " << ident.rhs.to_expr().str() << "\n";
  os << "residual:    " << rep.residual.str() << "\n";
  os << "holds:       " << (rep.holds ? "yes" : "no") << "\n";
  write_output(out_path, os.str());
  return rep.holds ? 0 : 1;
}

struct CheckTolerances {
  double oracle = 1e-9;
  double ode = 1e-10;
  double overlap = 1e-9;
  double normalization = 1e-10;
};

struct CheckRun {
  Json cases = Json::array();
  int failed = 0;

  void exact(const std::string& id, bool ok) {
    cases.push_back(Json{{"case", id}, {"residual", ok ? 0.0 : 1.0}, {"tolerance", 0.0},
                         {"pass", ok}});
    failed += ok ? 0 : 1;
  }
  void numeric(const std::string& id, double residual, double tol) {
    bool ok = residual < tol;
    cases.push_back(
        Json{{"case", id}, {"residual", residual}, {"tolerance", tol}, {"pass", ok}});
    failed += ok ? 0 : 1;
  }
  void numeric(const verify::ResidualReport& r) { numeric(r.case_id, r.residual, r.tolerance); }
};

void run_commutator_suite(CheckRun& run, std::uint64_t seed, const CheckTolerances& tol) {
  for (const auto& ident : identity_catalog()) {
    run.exact("exact:" + ident.id, check_identity(ident.id).holds);
    run.numeric(verify::differential_commutator_oracle(ident, seed, tol.oracle));
  }
}

void run_factorization_suite(CheckRun& run) {
  for (int dim : {2, 3}) {
    for (int s = 0; s <= 8; ++s) {
      std::string tag = "_d" + std::to_string(dim) + "_s" + std::to_string(s);
      run.exact("factorization" + tag, ladder::check_factorization(dim, s).is_zero());
      auto tw = ladder::check_intertwining(dim, s);
      run.exact("intertwining" + tag, tw.forward_residual.is_zero());
      run.exact("wrong_order_product" + tag, tw.wrong_order_residual.is_zero());
    }
  }
}

void run_chain_suite(CheckRun& run) {
  for (int dim : {2, 3}) {
    for (int n = 1; n <= 8; ++n) {
      for (int s = 0; s <= n - 1; ++s) {
        std::string tag =
            "_d" + std::to_string(dim) + "_n" + std::to_string(n) + "_s" + std::to_string(s);
        ladder::ChainResult chain = ladder::run_chain(dim, n, s);
        run.exact("chain_ratio_law" + tag, ladder::check_coefficient_ratios(chain).holds);
        run.exact("laguerre_identification" + tag, ladder::laguerre_identify(chain).all_match());
        run.exact("norm_forms_match" + tag, ladder::compute_norm(dim, n, s).forms_match());
        run.exact("eigenstate" + tag, ladder::check_eigenstate(dim, n, s).poly_is_zero());
      }
    }
  }
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= n - 1; ++m)
      run.exact("negative_m_n" + std::to_string(n) + "_m" + std::to_string(m),
                ladder::check_negative_m(n, m).all_hold());
  for (int n = 1; n <= 10; ++n)
    for (int dim : {2, 3})
      run.exact("shifted_momentum_eigencheck_d" + std::to_string(dim) + "_n" + std::to_string(n),
                radial::shifted_momentum_eigencheck(n, dim).holds);
}

void run_wavefunction_suite(CheckRun& run, const CheckTolerances& tol) {
  for (int dim : {2, 3}) {
    for (int n = 1; n <= 8; ++n)
      for (int s = 0; s <= n - 1; ++s)
        run.exact("two_route_d" + std::to_string(dim) + "_n" + std::to_string(n) + "_s" +
                      std::to_string(s),
                  wavefn::two_route_agreement(n, s, dim == 2 ? s : 0, dim).equal);
    for (int n = 1; n <= 6; ++n) {
      for (int s = 0; s <= n - 1; ++s) {
        std::string tag =
            "_d" + std::to_string(dim) + "_n" + std::to_string(n) + "_s" + std::to_string(s);
        auto wf = wavefn::full_wavefunction(n, s, dim == 2 ? s : 0, dim);
        auto est = verify::radial_overlap(wf, wf);
        run.numeric("normalization" + tag, std::abs(est.value - 1.0), tol.normalization);
        run.numeric(verify::ode_residual(wf, 1.0, tol.ode));
        run.exact("node_count" + tag, verify::node_count(wf) == n - s - 1);
      }
    }
    for (int s = 0; s <= 4; ++s) {
      auto gram = verify::orthonormality_matrix(dim, s, 6);
      double worst = 0.0;
      for (size_t i = 0; i < gram.size(); ++i)
        for (size_t j = 0; j < gram.size(); ++j)
          worst = std::max(worst, std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)));
      run.numeric("orthonormality_d" + std::to_string(dim) + "_s" + std::to_string(s), worst,
                  tol.overlap);
    }
  }
}

int cmd_check(const std::string& suite, std::uint64_t seed, const CheckTolerances& tol,
              bool inject_fault, const std::string& out_path) {
  CheckRun run;
  if (suite == "commutators" || suite == "all") run_commutator_suite(run, seed, tol);
  if (suite == "factorization" || suite == "all") run_factorization_suite(run);
  if (suite == "chains" || suite == "all") run_chain_suite(run);
  if (suite == "wavefunctions" || suite == "all") run_wavefunction_suite(run, tol);

  if (inject_fault) {
    run.cases.push_back(Json{{"case", "injected_fault"},
                             {"residual", 1.0},
                             {"tolerance", 0.0},
                             {"pass", false}});
    run.failed += 1;
  }

  Json doc{{"suite", suite},
           {"seed", seed},
           {"cases", run.cases},
           {"total", run.cases.size()},
           {"failed", run.failed},
           {"ok", run.failed == 0}};
  write_output(out_path, doc.dump(2) + "\n");
  return run.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact operator algebra and ladder-generated Coulomb wavefunctions"};
  app.require_subcommand(1);

  int dim = 3;
  int n = 1, n_max = 6, sector = 0, m = 0;
  std::string format = "json", comm_format = "text", out_path, grid_str = "0.05:30:120",
      suite = "all", ident_id;
  double theta = 1.0, phi = 0.0;
  bool list_ids = false, inject_fault = false;
  std::uint64_t seed = 42;
  CheckTolerances tol;

  auto* spectrum = app.add_subcommand("spectrum", "Exact energy table");
  spectrum->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
  spectrum->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  spectrum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("-o,--output", out_path);

  auto* state = app.add_subcommand("state", "Ladder chain, normalization and identification");
  state->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
  auto* state_n = state->add_option("--n", n)->check(CLI::PositiveNumber);
  auto* state_sector =
      state->add_option("--sector", sector, "l in 3D, m in 2D (negative m maps to |m|)");
  state->add_option("--summary-n-max", n_max, "emit a CSV summary for all states up to n")
      ->check(CLI::PositiveNumber)
      ->excludes(state_n)
      ->excludes(state_sector);
  state->add_option("-o,--output", out_path);

  auto* wave = app.add_subcommand("wavefunction", "Sampled wavefunction values (CSV)");
  wave->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
  wave->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  wave->add_option("--sector", sector, "l (3D only; in 2D the sector is |m|)");
  wave->add_option("--m", m, "z-projection (3D) or signed angular index (2D)");
  wave->add_option("--grid", grid_str, "rmin:rmax:count");
  wave->add_option("--theta", theta);
  wave->add_option("--phi", phi);
  wave->add_option("-o,--output", out_path);

  auto* check = app.add_subcommand("check", "Exact suites plus numeric oracles");
  check->add_option("--suite", suite)
      ->check(CLI::IsMember({"commutators", "factorization", "chains", "wavefunctions", "all"}));
  check->add_option("--seed", seed);
  check->add_option("--tol-oracle", tol.oracle);
  check->add_option("--tol-ode", tol.ode);
  check->add_option("--tol-overlap", tol.overlap);
  check->add_option("--tol-normalization", tol.normalization);
  check->add_option("-o,--output", out_path);
  check->add_flag("--inject-fault", inject_fault)->group("");

  auto* comm = app.add_subcommand("commutator", "Print a named catalog identity and its residual");
  comm->add_option("--id", ident_id);
  comm->add_flag("--list", list_ids);
  comm->add_option("--format", comm_format)->check(CLI::IsMember({"text", "json"}));
  comm->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
    if (spectrum->parsed()) return cmd_spectrum(dim, n_max, format, out_path);
    if (state->parsed()) {
      if (state->count("--summary-n-max")) return cmd_state_summary(dim, n_max, out_path);
      if (!state->count("--n") || !state->count("--sector"))
        throw CLI::ValidationError("state requires --n and --sector (or --summary-n-max)");
      return cmd_state(dim, n, sector, out_path);
    }
    if (wave->parsed())
      return cmd_wavefunction(dim, n, sector, m, parse_grid(grid_str), theta, phi, out_path);
    if (check->parsed()) return cmd_check(suite, seed, tol, inject_fault, out_path);
    if (comm->parsed()) {
      if (!list_ids && ident_id.empty())
        throw CLI::ValidationError("commutator requires --id or --list");
      return cmd_commutator(ident_id, list_ids, comm_format, out_path);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
