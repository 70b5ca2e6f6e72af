#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "opalg/position_part.hpp"

namespace opalg {

/// Ordered momentum product px^x py^y pz^z. The components commute, so the
/// exponent triple is already canonical.
struct MomentumWord {
  int x = 0;
  int y = 0;
  int z = 0;

  friend auto operator<=>(const MomentumWord&, const MomentumWord&) = default;

  bool empty() const { return x == 0 && y == 0 && z == 0; }
  int total() const { return x + y + z; }
  int coord(Axis a) const { return a == Axis::X ? x : a == Axis::Y ? y : z; }
  void bump(Axis a, int d) {
    if (a == Axis::X)
      x += d;
    else if (a == Axis::Y)
      y += d;
    else
      z += d;
  }
};

/// Commutator of a momentum component with a single position monomial,
/// obtained by the Leibniz rule peeled one generator at a time down to the
/// base rules
///
///   [p_a, r_b] = -i hbar delta_ab        [p_a, r]      = -i hbar r_a / r
///   [p_a, 1/r] =  i hbar r_a / r^3       [p_a, rho]    = -i hbar r_a / rho   (a != z)
///   [p_a, 1/rho] = i hbar r_a / rho^3                                        (a != z)
inline PositionPart momentum_position_commutator(Axis a, const PosMonomial& m) {
  auto coord_part = [&](Axis b) { return PositionPart::coordinate(b); };
  const UnitCoeff mih = -UnitCoeff::i_hbar();

  // Peel the leftmost remaining generator g of m: [p, g * rest] =
  // [p, g] rest + g [p, rest].
  if (m.x > 0 || m.y > 0 || m.z > 0) {
    Axis b = m.x > 0 ? Axis::X : m.y > 0 ? Axis::Y : Axis::Z;
    PosMonomial rest = m;
    rest.bump(b, -1);
    PositionPart out = a == b ? PositionPart::monomial(rest, UnitSum(mih)) : PositionPart::zero();
    return out + coord_part(b) * momentum_position_commutator(a, rest);
  }
  if (m.r > 0) {
    PosMonomial rest = m;
    rest.r = 0;
    PositionPart base = mih * coord_part(a) * PositionPart::r_power(-1);
    return base * PositionPart::monomial(rest, UnitSum(UnitCoeff::one())) +
           PositionPart::r_power(1) * momentum_position_commutator(a, rest);
  }
  if (m.rho > 0) {
    PosMonomial rest = m;
    rest.rho = 0;
    PositionPart base = a == Axis::Z
                            ? PositionPart::zero()
                            : mih * coord_part(a) * PositionPart::rho_power(-1);
    return base * PositionPart::monomial(rest, UnitSum(UnitCoeff::one())) +
           PositionPart::rho_power(1) * momentum_position_commutator(a, rest);
  }
  return PositionPart::zero();
}

/// [p_a, F] for a full fraction F = N / (r^2)^A (rho^2)^B: Leibniz over the
/// numerator monomials and over the 2A + 2B inverse radical factors.
inline PositionPart momentum_position_commutator(Axis a, const PositionPart& f) {
  // Denominator as a product of inverse radicals, peeled recursively:
  // [p, N D] = [p, N] D + N [p, D].
  PositionPart numerator_comm = PositionPart::zero();
  for (const auto& [m, c] : f.terms())
    numerator_comm = numerator_comm + momentum_position_commutator(a, m) * c;

  PositionPart denom = PositionPart::r_power(-2 * f.r2_den()) *
                       PositionPart::rho_power(-2 * f.rho2_den());
  PositionPart numerator = PositionPart::zero();
  for (const auto& [m, c] : f.terms())
    numerator = numerator + PositionPart::monomial(m, c);

  // [p, D] for D = (1/r)^(2A) (1/rho)^(2B), one factor at a time.
  PositionPart denom_comm = PositionPart::zero();
  const UnitCoeff pih = UnitCoeff::i_hbar();
  int inv_r = 2 * f.r2_den();
  int inv_rho = 2 * f.rho2_den();
  if (inv_r > 0 || inv_rho > 0) {
    // [p, f^k] = sum_j f^(k-1) [p, f] with commuting factors collapses to
    // k f^(k-1) [p, f]; apply for the r and rho factors.
    PositionPart comm_inv_r = pih * PositionPart::coordinate(a) * PositionPart::r_power(-3);
    PositionPart comm_inv_rho = a == Axis::Z
                                    ? PositionPart::zero()
                                    : pih * PositionPart::coordinate(a) * PositionPart::rho_power(-3);
    if (inv_r > 0)
      denom_comm = denom_comm + UnitCoeff::rational(inv_r) * PositionPart::r_power(-(inv_r - 1)) *
                                    PositionPart::rho_power(-inv_rho) * comm_inv_r;
    if (inv_rho > 0)
      denom_comm = denom_comm + UnitCoeff::rational(inv_rho) * PositionPart::r_power(-inv_r) *
                                    PositionPart::rho_power(-(inv_rho - 1)) * comm_inv_rho;
  }

  return numerator_comm * denom + numerator * denom_comm;
}

/// A normal-ordered operator: finite sum over momentum words of position
/// fractions, all position dependence to the left of all momentum dependence.
/// Zero is the empty sum. All arithmetic keeps the normal form canonical.
class OpExpr {
 public:
  using TermMap = std::map<MomentumWord, PositionPart>;

  OpExpr() = default;

  static OpExpr zero() { return {}; }
  static OpExpr one() { return from_position(PositionPart::one()); }
  static OpExpr scalar(const UnitCoeff& c) { return from_position(PositionPart::scalar(c)); }

  static OpExpr from_position(PositionPart p) {
    OpExpr e;
    if (!p.is_zero()) e.terms_.emplace(MomentumWord{}, std::move(p));
    return e;
  }

  static OpExpr momentum(Axis a) {
    OpExpr e;
    MomentumWord w;
    w.bump(a, 1);
    e.terms_.emplace(w, PositionPart::one());
    return e;
  }

  static OpExpr coordinate(Axis a) { return from_position(PositionPart::coordinate(a)); }
  static OpExpr r_power(int k) { return from_position(PositionPart::r_power(k)); }
  static OpExpr rho_power(int k) { return from_position(PositionPart::rho_power(k)); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  friend bool operator==(const OpExpr& a, const OpExpr& b) { return a.terms_ == b.terms_; }

  OpExpr& operator+=(const OpExpr& o) {
    for (const auto& [w, f] : o.terms_) add_term(w, f);
    return *this;
  }
  friend OpExpr operator+(OpExpr a, const OpExpr& b) { return a += b; }

  OpExpr operator-() const {
    OpExpr r;
    for (const auto& [w, f] : terms_) r.terms_.emplace(w, -f);
    return r;
  }
  OpExpr& operator-=(const OpExpr& o) { return *this += -o; }
  friend OpExpr operator-(OpExpr a, const OpExpr& b) { return a -= b; }

  friend OpExpr operator*(const UnitCoeff& c, const OpExpr& e) {
    OpExpr r;
    if (c.is_zero()) return r;
    for (const auto& [w, f] : e.terms_) r.add_term(w, f * c);
    return r;
  }
  friend OpExpr operator*(const OpExpr& e, const UnitCoeff& c) { return c * e; }

  friend OpExpr operator*(const UnitSum& c, const OpExpr& e) {
    OpExpr r;
    for (const auto& [w, f] : e.terms_) r.add_term(w, f * c);
    return r;
  }

  /// Left-multiplication by a pure position factor.
  friend OpExpr operator*(const PositionPart& p, const OpExpr& e) {
    OpExpr r;
    for (const auto& [w, f] : e.terms_) r.add_term(w, p * f);
    return r;
  }

  /// Normal-ordered operator product. Momentum words are pushed through the
  /// right factor's position parts with [p_a, F] insertions.
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b) {
    OpExpr out;
    for (const auto& [wa, fa] : a.terms_) {
      for (const auto& [wb, fb] : b.terms_) {
        OpExpr pushed = push_word_through(wa, fb);
        for (const auto& [w, f] : pushed.terms_) {
          MomentumWord wres{w.x + wb.x, w.y + wb.y, w.z + wb.z};
          out.add_term(wres, fa * f);
        }
      }
    }
    return out;
  }

  OpExpr pow(int k) const {
    OpExpr acc = one();
    for (int j = 0; j < k; ++j) acc = acc * *this;
    return acc;
  }

  /// Hermitian adjoint: reverse each term, conjugate coefficients, reorder.
  OpExpr dagger() const {
    OpExpr out;
    for (const auto& [w, f] : terms_) {
      OpExpr pushed = push_word_through(w, f.conj());
      out += pushed;
    }
    return out;
  }

  /// Deterministic text form; terms sorted by position key then momentum word.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, f] : flattened_for_display()) {
      if (!first) os << "  +  ";
      first = false;
      os << "[" << f.str() << "]";
      auto put = [&os](const char* sym, int e) {
        if (e == 0) return;
        os << " " << sym;
        if (e != 1) os << "^" << e;
      };
      put("px", w.x);
      put("py", w.y);
      put("pz", w.z);
    }
    return os.str();
  }

 private:
  TermMap terms_;

  // Display order: position fraction key first, then momentum word.
  std::vector<std::pair<MomentumWord, PositionPart>> flattened_for_display() const {
    std::vector<std::pair<MomentumWord, PositionPart>> out(terms_.begin(), terms_.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      const PositionPart& fa = a.second;
      const PositionPart& fb = b.second;
      auto ka = std::tuple(fa.r2_den(), fa.rho2_den(),
                           fa.terms().empty() ? PosMonomial{} : fa.terms().begin()->first);
      auto kb = std::tuple(fb.r2_den(), fb.rho2_den(),
                           fb.terms().empty() ? PosMonomial{} : fb.terms().begin()->first);
      if (ka != kb) return ka < kb;
      return a.first < b.first;
    });
    return out;
  }

  void add_term(const MomentumWord& w, const PositionPart& f) {
    if (f.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, f);
    if (!inserted) {
      it->second = it->second + f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// w * F as a normal-ordered expression: peel the momentum factor adjacent
  /// to F (z, then y, then x) and recurse on p_a F = F p_a + [p_a, F].
  static OpExpr push_word_through(const MomentumWord& w, const PositionPart& f) {
    if (f.is_zero()) return zero();
    if (w.empty()) return from_position(f);
    Axis a = w.z > 0 ? Axis::Z : w.y > 0 ? Axis::Y : Axis::X;
    MomentumWord rest = w;
    rest.bump(a, -1);
    OpExpr left = push_word_through(rest, f);
    OpExpr out;
    for (const auto& [wl, fl] : left.terms_) {
      MomentumWord wr = wl;
      wr.bump(a, 1);
      out.add_term(wr, fl);
    }
    out += push_word_through(rest, momentum_position_commutator(a, f));
    return out;
  }
};

/// Normal form of a b - b a.
inline OpExpr commutator(const OpExpr& a, const OpExpr& b) { return a * b - b * a; }

}  // namespace opalg
