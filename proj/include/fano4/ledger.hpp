#pragma once

// Riemann–Roch bookkeeping for (χ(−K), (−K)⁴, (−K)²·c₂, ρ) under blow-ups
// and flips of smooth projective 4-folds.

#include "fano4/arith.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fano4::ledger {

class LedgerError : public Error {
 public:
  using Error::Error;
};

struct LedgerState {
  std::int64_t chi_minusK = 0;  // χ(X, −K_X)
  std::int64_t degK4 = 0;       // (−K_X)^4
  std::int64_t c2K2 = 0;        // (−K_X)^2 · c₂(X)
  std::int64_t rho = 1;
  std::int64_t chi_O = 1;       // χ(X, O_X)
  bool fano_flag = false;       // h⁰(−K) = χ(−K) asserted by the caller

  /// 12(χ(−K) − χ(O)) = 2(−K)⁴ + (−K)²c₂
  bool rr_identity_holds() const { return 12 * (chi_minusK - chi_O) == 2 * degK4 + c2K2; }

  void check() const {
    if (!rr_identity_holds())
      throw LedgerError("ledger state violates 12(chi - chi_O) = 2 K^4 + K^2 c2: " + to_string());
    if (rho < 1) throw LedgerError("ledger state has rho < 1");
  }

  /// h⁰(X, −K_X), available only while the Fano flag is asserted.
  std::optional<std::int64_t> h0_minusK() const {
    if (!fano_flag) return std::nullopt;
    return chi_minusK;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "(chi=" << chi_minusK << ", K^4=" << degK4 << ", K^2c2=" << c2K2 << ", rho=" << rho << ")";
    return os.str();
  }

  friend bool operator==(const LedgerState& a, const LedgerState& b) {
    return a.chi_minusK == b.chi_minusK && a.degK4 == b.degK4 && a.c2K2 == b.c2K2 && a.rho == b.rho &&
           a.chi_O == b.chi_O && a.fano_flag == b.fano_flag;
  }
};

inline LedgerState p4_state() {
  LedgerState s{126, 625, 250, 1, 1, true};
  s.check();
  return s;
}

/// Blow-up data of a smooth curve C ⊂ Y; d(C) = −K_Y·C + 2 − 2g(C) is derived.
struct CurveBlowupData {
  std::int64_t degKC = 0;
  std::int64_t genus = 0;
  std::int64_t dC() const { return degKC + 2 - 2 * genus; }
};

/// χ(X, D) by Hirzebruch–Riemann–Roch on a 4-fold:
/// (D⁴ − 2K·D³ + D²(K² + c₂) − D·K·c₂)/24 + χ(O_X).
inline Rational chi_general(const Rational& D4, const Rational& KD3, const Rational& D2_K2_plus_c2,
                            const Rational& D_K_c2, const Rational& chi_O) {
  return (D4 - 2 * KD3 + D2_K2_plus_c2 - D_K_c2) / 24 + chi_O;
}

/// Same, but raises when the inputs are inconsistent (non-integral χ).
inline Integer chi_integral(const Rational& D4, const Rational& KD3, const Rational& D2_K2_plus_c2,
                            const Rational& D_K_c2, const Rational& chi_O) {
  Rational x = chi_general(D4, KD3, D2_K2_plus_c2, D_K_c2, chi_O);
  if (x.get_den() != 1) throw LedgerError("chi_general: non-integral Euler characteristic " + x.get_str());
  return x.get_num();
}

inline LedgerState apply_point_blowup(LedgerState s) {
  s.degK4 -= 81;
  s.c2K2 -= 18;
  s.chi_minusK -= 15;
  s.rho += 1;
  s.fano_flag = false;
  s.check();
  return s;
}

inline LedgerState apply_curve_blowup(LedgerState s, const CurveBlowupData& c) {
  if (c.genus < 0) throw LedgerError("curve blow-up: genus must be nonnegative");
  const std::int64_t d = c.dC();
  s.degK4 -= 16 * d;
  s.c2K2 -= 4 * d;
  s.chi_minusK -= 3 * d;
  s.rho += 1;
  s.fano_flag = false;
  s.check();
  return s;
}

/// Blow-up along an exceptional plane.
inline LedgerState apply_plane_blowup(LedgerState s) {
  s.degK4 -= 17;
  s.c2K2 -= 2;
  s.chi_minusK -= 3;
  s.rho += 1;
  s.fano_flag = false;
  s.check();
  return s;
}

enum class FlipDirection { FanoToSqm, SqmToFano };

/// SQM with s exceptional planes on the Fano side: χ is unchanged and
/// (−K)⁴ drops by s going away from the Fano model. The c₂ term moves by 2s
/// in the opposite sense so that the Riemann–Roch identity is preserved.
inline LedgerState apply_flip(LedgerState s, FlipDirection dir, std::int64_t s_count) {
  if (s_count < 0) throw LedgerError("flip: negative component count");
  const std::int64_t sign = dir == FlipDirection::FanoToSqm ? -1 : 1;
  s.degK4 += sign * s_count;
  s.c2K2 -= 2 * sign * s_count;
  s.fano_flag = false;
  s.check();
  return s;
}

enum class Rho1Kind { P4, Quadric, Index3, Index2, Index1General, Index1Deg3Family };

/// Upper bounds (or exact values) of h⁰(Y, −K_Y) for smooth Fano 4-folds with ρ = 1.
/// For index 3 and 2 the value is exact given H⁴ and capped by the range of H⁴.
inline std::int64_t h0_bound_rho1(Rho1Kind kind, std::int64_t H4 = 0) {
  switch (kind) {
    case Rho1Kind::P4:
      return 126;
    case Rho1Kind::Quadric:
      return 105;
    case Rho1Kind::Index3:
      if (H4 < 1 || H4 > 5) throw LedgerError("index 3: H^4 must lie in [1, 5]");
      return 15 * H4 + 10;
    case Rho1Kind::Index2:
      if (H4 < 1 || H4 > 22) throw LedgerError("index 2: H^4 must lie in [1, 22]");
      return 3 * H4 + 9;
    case Rho1Kind::Index1General:
      return 97;
    case Rho1Kind::Index1Deg3Family:
      return 121;
  }
  throw LedgerError("h0_bound_rho1: unknown kind");
}

/// Largest r with h0_Y − 15r >= threshold (threshold 1 by default).
inline std::int64_t max_point_blowups(std::int64_t h0_Y, std::int64_t threshold = 1) {
  if (h0_Y < 1) throw LedgerError("max_point_blowups: h0 must be positive");
  if (h0_Y < threshold) return 0;
  return (h0_Y - threshold) / 15;
}

// ---------------------------------------------------------------------------
// Move scripts.

struct ScriptStep {
  std::string move;  // the source line, trimmed
  LedgerState state;
};

/// Runs a move script, one move per line:
///   start P4
///   start custom chi=<n> degK4=<n> c2K2=<n> rho=<n>
///   blowup point | blowup curve degKC=<n> genus=<n> | blowup plane
///   flip dir=<f2s|s2f> s=<n>
/// Blank lines and lines starting with '#' are ignored.
inline std::vector<ScriptStep> run_script(std::istream& in) {
  std::vector<ScriptStep> out;
  std::optional<LedgerState> cur;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw LedgerError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    auto kv = [&](const std::string& key) -> std::int64_t {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq != std::string::npos && tok[i].substr(0, eq) == key) {
          try {
            std::size_t used = 0;
            auto v = std::stoll(tok[i].substr(eq + 1), &used);
            if (used != tok[i].size() - eq - 1) fail("bad integer for " + key);
            return v;
          } catch (const std::logic_error&) {
            fail("bad integer for " + key);
          }
        }
      }
      fail("missing " + key + "=");
      return 0;
    };
    auto kvs = [&](const std::string& key) -> std::string {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq != std::string::npos && tok[i].substr(0, eq) == key) return tok[i].substr(eq + 1);
      }
      fail("missing " + key + "=");
      return {};
    };
    try {
      if (tok[0] == "start") {
        if (tok.size() >= 2 && tok[1] == "P4") {
          cur = p4_state();
        } else if (tok.size() >= 2 && tok[1] == "custom") {
          LedgerState s{kv("chi"), kv("degK4"), kv("c2K2"), kv("rho"), 1, false};
          s.check();
          cur = s;
        } else {
          fail("unknown start: expected 'start P4' or 'start custom ...'");
        }
      } else {
        if (!cur) fail("move before start");
        if (tok[0] == "blowup" && tok.size() >= 2 && tok[1] == "point") {
          cur = apply_point_blowup(*cur);
        } else if (tok[0] == "blowup" && tok.size() >= 2 && tok[1] == "plane") {
          cur = apply_plane_blowup(*cur);
        } else if (tok[0] == "blowup" && tok.size() >= 2 && tok[1] == "curve") {
          cur = apply_curve_blowup(*cur, {kv("degKC"), kv("genus")});
        } else if (tok[0] == "flip") {
          std::string d = kvs("dir");
          FlipDirection dir;
          if (d == "f2s")
            dir = FlipDirection::FanoToSqm;
          else if (d == "s2f")
            dir = FlipDirection::SqmToFano;
          else
            fail("flip dir must be f2s or s2f");
          cur = apply_flip(*cur, dir, kv("s"));
        } else {
          fail("unknown move '" + tok[0] + "'");
        }
      }
    } catch (const LedgerError& e) {
      std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      fail(what);
    }
    out.push_back({line, *cur});
  }
  return out;
}

inline std::vector<ScriptStep> run_script(const std::string& text) {
  std::istringstream in(text);
  return run_script(in);
}

}  // namespace fano4::ledger
