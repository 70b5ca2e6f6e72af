#pragma once

#include <json.hpp>

#include <string>

#include "opalg/ladder.hpp"
#include "opalg/op_expr.hpp"
#include "opalg/verify.hpp"
#include "opalg/wavefn.hpp"

namespace opalg::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double (nlohmann's serializer).
inline std::string double_string(double v) { return Json(v).dump(); }

inline Json coeff_json(const UnitCoeff& c) {
  return Json{{"value", fraction_string(c.value)},
              {"i_pow", c.i_pow},
              {"sqrt2_pow", c.sqrt2_pow},
              {"hbar_exp", c.hbar_exp},
              {"mu_exp_x2", c.mu_exp_x2},
              {"e_exp", c.e_exp}};
}

inline Json unit_sum_json(const UnitSum& s) {
  Json arr = Json::array();
  for (const auto& c : s.parts()) arr.push_back(coeff_json(c));
  return arr;
}

/// Term list sorted by position key then momentum word, rationals as
/// "num/den" strings.
inline Json op_expr_json(const OpExpr& e) {
  Json arr = Json::array();
  for (const auto& [w, f] : e.terms()) {
    for (const auto& [m, c] : f.terms()) {
      Json term;
      term["coeff"] = unit_sum_json(c);
      term["monomial"] = Json{{"rx", m.x}, {"ry", m.y}, {"rz", m.z}, {"r", m.r}, {"rho", m.rho}};
      term["r2_den"] = f.r2_den();
      term["rho2_den"] = f.rho2_den();
      term["momentum"] = Json{{"px", w.x}, {"py", w.y}, {"pz", w.z}};
      arr.push_back(std::move(term));
    }
  }
  return arr;
}

inline Json radial_state_json(const radial::RadialState& s) {
  Json coeffs = Json::array();
  for (const auto& [x_exp, c] : s.poly()) {
    for (const auto& part : c.parts()) {
      coeffs.push_back(Json{{"x_exp", x_exp},
                            {"value", fraction_string(part.value)},
                            {"i_pow", part.i_pow},
                            {"unit_exps",
                             Json{{"sqrt2_pow", part.sqrt2_pow},
                                  {"hbar_exp", part.hbar_exp},
                                  {"mu_exp_x2", part.mu_exp_x2},
                                  {"e_exp", part.e_exp}}}});
    }
  }
  return Json{{"dim", s.dim()}, {"n", s.n()}, {"coeffs", std::move(coeffs)}};
}

inline Json chain_json(const ladder::ChainResult& c) {
  Json b = Json::array();
  for (const auto& q : c.b_coeffs) b.push_back(fraction_string(q));
  return Json{{"dim", c.dim},
              {"n", c.n},
              {"sector", c.sector},
              {"b_coeffs", std::move(b)},
              {"scale", coeff_json(c.scale)}};
}

inline Json norm_json(const ladder::NormConstant& nc) {
  return Json{{"dim", nc.dim},
              {"n", nc.n},
              {"sector", nc.sector},
              {"product_form", coeff_json(nc.product_form)},
              {"closed_form", coeff_json(nc.closed_form)},
              {"forms_match", nc.forms_match()},
              {"constant", nc.constant.str()},
              {"constant_numeric", nc.constant.to_double()}};
}

inline Json laguerre_json(const laguerre::LaguerrePoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(fraction_string(c));
  return Json{{"alpha", p.alpha}, {"degree", p.degree}, {"coeffs", std::move(coeffs)}};
}

inline Json laguerre_id_json(const ladder::LaguerreIdentification& li) {
  return Json{{"alpha", li.alpha},
              {"degree", li.degree},
              {"polynomial", laguerre_json(laguerre::laguerre(li.alpha, li.degree))},
              {"proportionality", fraction_string(li.proportionality)},
              {"proportionality_closed_form", fraction_string(li.proportionality_closed_form)},
              {"top_coeff", fraction_string(li.top_coeff)},
              {"top_coeff_formula", fraction_string(li.top_coeff_formula)},
              {"coeffs_match", li.coeffs_match},
              {"cprime_matches", li.cprime_matches},
              {"top_matches", li.top_matches}};
}

/// One summary row per (n, sector): level energy, normalization constant and
/// the exact chain coefficients.
inline std::string chain_summary_csv(int dim, int n_max) {
  std::ostringstream os;
  os << "n,sector,energy_e2_per_a0,norm_constant,b_coeffs\n";
  for (int n = 1; n <= n_max; ++n) {
    for (int s = 0; s <= n - 1; ++s) {
      ladder::ChainResult chain = ladder::run_chain(dim, n, s);
      ladder::NormConstant norm = ladder::compute_norm(dim, n, s);
      os << n << "," << s << "," << fraction_string(ladder::energy_in_coulomb_units(dim, n))
         << "," << norm.constant.str() << ",";
      for (size_t j = 0; j < chain.b_coeffs.size(); ++j) {
        if (j) os << ";";
        os << fraction_string(chain.b_coeffs[j]);
      }
      os << "\n";
    }
  }
  return os.str();
}

inline Json wavefunction_json(const wavefn::Wavefunction& wf) {
  Json coeffs = Json::array();
  for (const auto& c : wf.coeffs) coeffs.push_back(fraction_string(c));
  return Json{{"dim", wf.dim},
              {"n", wf.n},
              {"sector", wf.sector},
              {"m", wf.m},
              {"nu", fraction_string(wf.nu)},
              {"norm", wf.norm.str()},
              {"norm_numeric", wf.norm.to_double()},
              {"decay_rate", wf.decay_rate()},
              {"coeffs_u_power", coeffs}};
}

inline Json residual_json(const verify::ResidualReport& r) {
  return Json{{"case", r.case_id},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

}  // namespace opalg::io
