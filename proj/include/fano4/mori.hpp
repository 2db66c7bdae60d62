#pragma once

// Global cone analysis on smooth projective toric 4-folds: the cones
// Nef ⊆ Mov ⊆ Eff and NE, mov, fixed prime divisors and their types, the
// Lefschetz defect, divisor-directed MMPs and the Mori chamber decomposition.

#include "fano4/arith.hpp"
#include "fano4/birational.hpp"
#include "fano4/cone.hpp"
#include "fano4/fan.hpp"
#include "fano4/toric.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fano4::mori {

using birational::BirationalTrace;
using birational::ExtremalRay;
using birational::TraceStep;
using birational::TypeLabel;
using cones::RationalCone;
using toric::CurveClass;
using toric::DivisorClass;
using toric::ToricVariety;

class MoriError : public Error {
 public:
  using Error::Error;
};

/// Classes [D_j] in N¹(X) as integer vectors.
inline std::vector<IVec> prime_classes(const ToricVariety& X) {
  std::vector<IVec> v;
  for (int j = 0; j < X.num_rays(); ++j) v.push_back(birational::to_ivec(X.classes().prime_divisor(j).coords));
  return v;
}

// ---------------------------------------------------------------------------
// Cone suite.

struct ConeSuite {
  RationalCone nef, mov, eff;  // in N¹(X)
  RationalCone ne, mov_curves; // in N₁(X)
  std::vector<CheckResult> checks;
};

/// Nef cone as the intersection over maximal cones σ of cone⟨[D_j] : j ∉ σ⟩.
inline RationalCone nef_from_fan(const ToricVariety& X) {
  auto v = prime_classes(X);
  std::vector<RationalCone> parts;
  for (const auto& c : X.fan().max_cones) {
    std::vector<IVec> g;
    for (int j = 0; j < X.num_rays(); ++j)
      if (!std::binary_search(c.begin(), c.end(), j)) g.push_back(v[static_cast<std::size_t>(j)]);
    parts.push_back(RationalCone::from_generators(g, static_cast<std::size_t>(X.rho())));
  }
  return cones::intersect_all(parts, static_cast<std::size_t>(X.rho()));
}

inline RationalCone movable_cone(const ToricVariety& X) {
  auto v = prime_classes(X);
  std::vector<RationalCone> parts;
  for (int i = 0; i < X.num_rays(); ++i) {
    std::vector<IVec> g;
    for (int j = 0; j < X.num_rays(); ++j)
      if (j != i) g.push_back(v[static_cast<std::size_t>(j)]);
    parts.push_back(RationalCone::from_generators(g, static_cast<std::size_t>(X.rho())));
  }
  return cones::intersect_all(parts, static_cast<std::size_t>(X.rho()));
}

/// All five cones; the duality identities and the containment chain are
/// verified before return.
inline ConeSuite cone_suite(const ToricVariety& X) {
  const auto r = static_cast<std::size_t>(X.rho());
  ConeSuite s;
  s.ne = birational::mori_cone(X);
  s.nef = cones::dual_cone(s.ne);
  if (!s.nef.full_dimensional()) throw MoriError("cone_suite: Nef(X) has empty interior (fan is not projective)");
  s.eff = RationalCone::from_generators(prime_classes(X), r);
  s.mov = movable_cone(X);
  s.mov_curves = cones::dual_cone(s.eff);
  s.checks.push_back({"NE = Nef^dual", cones::dual_cone(s.nef) == s.ne, {}});
  s.checks.push_back({"Eff = mov^dual", cones::dual_cone(s.mov_curves) == s.eff, {}});
  s.checks.push_back({"Nef from maximal cones", nef_from_fan(X) == s.nef, {}});
  s.checks.push_back({"Nef in Mov", s.mov.contains(s.nef), {}});
  s.checks.push_back({"Mov in Eff", s.eff.contains(s.mov), {}});
  s.checks.push_back({"mov in NE", s.ne.contains(s.mov_curves), {}});
  for (auto& c : s.checks)
    if (!c.pass) c.witness = "identity failed";
  for (const auto& c : s.checks)
    if (!c.pass) throw MoriError("cone_suite: " + c.name + " does not hold");
  return s;
}

// ---------------------------------------------------------------------------
// Divisor-directed MMP.

enum class MmpEnd { Nef, FiberType, ContractedD, LeftSmooth, Unsupported };

inline std::string to_string(MmpEnd e) {
  switch (e) {
    case MmpEnd::Nef: return "nef";
    case MmpEnd::FiberType: return "fiber_type";
    case MmpEnd::ContractedD: return "contracted";
    case MmpEnd::LeftSmooth: return "left_smooth_category";
    case MmpEnd::Unsupported: return "unsupported_flip";
  }
  return "?";
}

struct MmpOptions {
  std::size_t max_steps = 64;
  std::size_t max_traces = 4096;  // exhaustive mode
};

struct MmpResult {
  BirationalTrace trace;
  MmpEnd end = MmpEnd::Nef;
  Fan final_fan;
  QVec final_divisor;
  std::optional<ExtremalRay> terminal_ray;  // the fiber-type or final divisorial ray
  std::vector<Rational> measures;           // Σ |D·C| over D-negative walls, per visited model
  std::vector<std::pair<int, std::size_t>> progress;  // (ρ, hyperplanes separating Nef from [D]) per model
  std::string note;
};

namespace detail {

inline Rational negative_wall_measure(const ToricVariety& X, const QVec& d) {
  Rational m = 0;
  for (const auto& w : X.walls()) {
    Rational x = dot(d, w.relation);
    if (x < 0) m -= x;
  }
  return m;
}

inline std::vector<IVec> arrangement_normals(const std::vector<IVec>& v, std::size_t rho);

/// Number of hyperplanes spanned by ρ−1 prime classes that have Nef(X) on one
/// closed side and the class of d strictly on the other.
inline std::size_t separating_hyperplanes(const ToricVariety& X, const QVec& d) {
  const auto rho = static_cast<std::size_t>(X.rho());
  auto nef = cones::dual_cone(birational::mori_cone(X));
  IVec dc = primitive(X.classes().divisor_class(d).coords);
  std::size_t count = 0;
  for (const auto& h : arrangement_normals(prime_classes(X), rho)) {
    int side = 0;
    bool split = false;
    for (const auto& r : nef.extreme_rays()) {
      int s = sgn(dot(h, r));
      if (s == 0) continue;
      if (side == 0) side = s;
      if (s != side) split = true;
    }
    if (split || side == 0) continue;
    if (sgn(dot(h, dc)) == -side) ++count;
  }
  return count;
}

inline std::optional<birational::Invariants> maybe_invariants(const ToricVariety& X) {
  if (X.dim() != 4) return std::nullopt;
  return birational::invariants(X);
}

struct MmpState {
  Fan fan;
  QVec d;
  int tracked = -1;
};

/// D-negative extremal rays ordered by the default policy: most negative
/// D·C first, ties by the lowest wall index on the ray.
inline std::vector<std::pair<ExtremalRay, Rational>> negative_rays(const ToricVariety& X, const QVec& d) {
  std::vector<std::pair<ExtremalRay, Rational>> out;
  for (auto& R : birational::extremal_rays(X)) {
    Rational x = dot(d, R.relation);
    if (x < 0) out.emplace_back(std::move(R), x);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

/// Applies the step along R; returns the successor state, or nullopt when the
/// MMP ends here (with `res` updated accordingly).
inline std::optional<MmpState> apply_step(const ToricVariety& X, const MmpState& st, const ExtremalRay& R,
                                          const Rational& deg, MmpResult& res) {
  TraceStep step;
  step.before = st.fan;
  step.relation = R.relation;
  step.divisor_degree = deg;
  step.ledger_before = maybe_invariants(X);
  const auto& c = R.contraction;
  switch (c.kind) {
    case birational::ContractionKind::FiberType:
      res.end = MmpEnd::FiberType;
      res.terminal_ray = R;
      res.final_fan = st.fan;
      res.final_divisor = st.d;
      return std::nullopt;
    case birational::ContractionKind::Small: {
      step.move = birational::MoveKind::Flip;
      step.detail = "flip of " + to_string_vec(R.relation);
      if (!birational::is_flippable_pattern(R, X.dim())) {
        res.end = MmpEnd::Unsupported;
        res.terminal_ray = R;
        res.final_fan = st.fan;
        res.final_divisor = st.d;
        res.note = "small ray with unsupported circuit " + to_string_vec(R.relation);
        return std::nullopt;
      }
      MmpState next{birational::flip(X, R), st.d, st.tracked};
      step.after = next.fan;
      step.ledger_after = maybe_invariants(ToricVariety(next.fan));
      res.trace.steps.push_back(std::move(step));
      return next;
    }
    case birational::ContractionKind::Divisorial: {
      const int e = c.exc_rays.front();
      step.move = birational::MoveKind::Contraction;
      step.type_label = c.type_label;
      step.removed_ray = e;
      step.detail = "contraction of " + st.fan.label(e) + " (" + birational::to_string(*c.type_label) + ")";
      const bool smooth = *c.type_label == TypeLabel::T32sm || *c.type_label == TypeLabel::T31sm ||
                          *c.type_label == TypeLabel::T30sm;
      if (!smooth) {
        auto target = birational::contract_divisorial(st.fan, R);
        step.after = target.fan;
        step.after_smooth = target.smooth;
        res.trace.steps.push_back(std::move(step));
        res.terminal_ray = R;
        res.final_fan = target.fan;
        res.final_divisor = st.d;
        res.final_divisor.erase(res.final_divisor.begin() + e);
        res.end = e == st.tracked ? MmpEnd::ContractedD : MmpEnd::LeftSmooth;
        return std::nullopt;
      }
      MmpState next{birational::contract(st.fan, R), st.d, st.tracked};
      next.d.erase(next.d.begin() + e);
      step.after = next.fan;
      step.ledger_after = maybe_invariants(ToricVariety(next.fan));
      res.trace.steps.push_back(std::move(step));
      if (e == st.tracked) {
        res.end = MmpEnd::ContractedD;
        res.terminal_ray = R;
        res.final_fan = next.fan;
        res.final_divisor = next.d;
        return std::nullopt;
      }
      if (next.tracked > e) --next.tracked;
      return next;
    }
  }
  return std::nullopt;
}

inline void finish_nef(const MmpState& st, MmpResult& res) {
  res.end = MmpEnd::Nef;
  res.final_fan = st.fan;
  res.final_divisor = st.d;
}

}  // namespace detail

/// MMP for the divisor d (coefficients on the invariant prime divisors) with
/// the default choice policy. `tracked` names a prime divisor whose
/// contraction ends the run (−1 for none).
inline MmpResult mmp_for_divisor(const Fan& f, const QVec& d, int tracked = -1, const MmpOptions& opt = {}) {
  if (d.size() != static_cast<std::size_t>(f.num_rays())) throw DimensionError("mmp_for_divisor: divisor length mismatch");
  detail::MmpState st{f, d, tracked};
  MmpResult res;
  for (std::size_t k = 0;; ++k) {
    ToricVariety X(st.fan);
    X.require_dim4();
    res.measures.push_back(detail::negative_wall_measure(X, st.d));
    res.progress.emplace_back(X.rho(), detail::separating_hyperplanes(X, st.d));
    auto neg = detail::negative_rays(X, st.d);
    if (neg.empty()) {
      detail::finish_nef(st, res);
      return res;
    }
    if (k >= opt.max_steps)
      throw MoriError("mmp_for_divisor: step cap of " + std::to_string(opt.max_steps) + " exceeded");
    auto next = detail::apply_step(X, st, neg.front().first, neg.front().second, res);
    if (!next) return res;
    st = std::move(*next);
  }
}

inline MmpResult mmp_for_divisor(const Fan& f, int ray, const MmpOptions& opt = {}) {
  if (ray < 0 || ray >= f.num_rays()) throw Error("mmp_for_divisor: ray index out of range");
  QVec d(static_cast<std::size_t>(f.num_rays()));
  d[static_cast<std::size_t>(ray)] = 1;
  return mmp_for_divisor(f, d, ray, opt);
}

/// Every MMP for d: all choice sequences among D-negative extremal rays.
inline std::vector<MmpResult> mmp_exhaustive(const Fan& f, const QVec& d, int tracked = -1, const MmpOptions& opt = {}) {
  std::vector<MmpResult> out;
  std::function<void(const detail::MmpState&, MmpResult, std::size_t)> dfs =
      [&](const detail::MmpState& st, MmpResult res, std::size_t depth) {
        if (out.size() >= opt.max_traces) throw MoriError("mmp_exhaustive: more than max_traces outcomes");
        ToricVariety X(st.fan);
        X.require_dim4();
        res.measures.push_back(detail::negative_wall_measure(X, st.d));
        res.progress.emplace_back(X.rho(), detail::separating_hyperplanes(X, st.d));
        auto neg = detail::negative_rays(X, st.d);
        if (neg.empty()) {
          detail::finish_nef(st, res);
          out.push_back(std::move(res));
          return;
        }
        if (depth >= opt.max_steps)
          throw MoriError("mmp_exhaustive: step cap of " + std::to_string(opt.max_steps) + " exceeded");
        for (const auto& [R, deg] : neg) {
          MmpResult branch = res;
          auto next = detail::apply_step(X, st, R, deg, branch);
          if (next)
            dfs(*next, std::move(branch), depth + 1);
          else
            out.push_back(std::move(branch));
        }
      };
  dfs({f, d, tracked}, MmpResult{}, 0);
  return out;
}

inline std::vector<MmpResult> mmp_exhaustive(const Fan& f, int ray, const MmpOptions& opt = {}) {
  QVec d(static_cast<std::size_t>(f.num_rays()));
  d[static_cast<std::size_t>(ray)] = 1;
  return mmp_exhaustive(f, d, ray, opt);
}

// ---------------------------------------------------------------------------
// Fixed prime divisors.

struct FixedDivisorReport {
  int ray_index = -1;
  DivisorClass cls;
  std::string type_label;              // empty until classified
  std::vector<std::string> observed;   // terminal contraction labels over all MMPs
  BirationalTrace mmp_trace;           // default-policy MMP
  std::optional<IVec> C_D_relation;    // (D_j·C_D)_j on the input fan
  std::optional<CurveClass> C_D_class;
  std::optional<Rational> pairing_D_CD;
  std::optional<Integer> degK_CD;
};

/// Invariant prime divisors whose class spans a 1-dimensional face of Eff(X)
/// not contained in Mov(X).
inline std::vector<FixedDivisorReport> fixed_prime_divisors(const ToricVariety& X, const ConeSuite& s) {
  std::vector<FixedDivisorReport> out;
  auto v = prime_classes(X);
  for (int i = 0; i < X.num_rays(); ++i) {
    const auto& c = v[static_cast<std::size_t>(i)];
    if (s.eff.is_extreme_ray(c) && !s.mov.contains(c)) {
      FixedDivisorReport r;
      r.ray_index = i;
      r.cls = X.classes().prime_divisor(i);
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<FixedDivisorReport> fixed_prime_divisors(const ToricVariety& X) {
  return fixed_prime_divisors(X, cone_suite(X));
}

/// Expected −K·C_D for each type label.
inline std::optional<int> expected_degK(const std::string& label) {
  if (label == "(3,2)") return 1;
  if (label == "(3,1)^sm" || label == "(3,0)^Q") return 2;
  if (label == "(3,0)^sm") return 3;
  return std::nullopt;
}

/// Fixed-divisor type of a single terminal contraction label.
inline std::string fixed_type_of(TypeLabel t) {
  switch (t) {
    case TypeLabel::T32:
    case TypeLabel::T32sm: return "(3,2)";
    case TypeLabel::T31sm: return "(3,1)^sm";
    case TypeLabel::T30sm: return "(3,0)^sm";
    case TypeLabel::T30Q: return "(3,0)^Q";
    default: return "undetermined";
  }
}

namespace detail {

inline std::string terminal_label(const MmpResult& r) {
  if (r.end != MmpEnd::ContractedD || r.trace.steps.empty() || !r.trace.steps.back().type_label) return "none";
  return birational::to_string(*r.trace.steps.back().type_label);
}

/// The terminal relation, with zeros re-inserted at rays removed by earlier
/// contractions (a general curve avoids the blown-up centers).
inline IVec pulled_back_relation(const MmpResult& r) {
  IVec rel = r.terminal_ray->relation;
  for (std::size_t k = r.trace.steps.size() - 1; k-- > 0;) {
    const auto& s = r.trace.steps[k];
    if (s.move == birational::MoveKind::Contraction && s.removed_ray >= 0)
      rel.insert(rel.begin() + s.removed_ray, Integer(0));
  }
  return rel;
}

}  // namespace detail

/// Types a fixed divisor: all MMPs for D are enumerated; a single terminal
/// type gives the label, several give ambiguous{...}. C_D is taken from the
/// first MMP (default policy first) whose terminal type has a degree entry.
inline FixedDivisorReport classify_fixed_divisor(const ToricVariety& X, FixedDivisorReport rep,
                                                 const MmpOptions& opt = {}) {
  const int i = rep.ray_index;
  if (i < 0 || i >= X.num_rays()) throw MoriError("classify_fixed_divisor: ray index out of range");
  rep.cls = X.classes().prime_divisor(i);
  if (movable_cone(X).contains(prime_classes(X)[static_cast<std::size_t>(i)]))
    throw MoriError("classify_fixed_divisor: D_" + std::to_string(i) + " is movable, not fixed");
  auto def = mmp_for_divisor(X.fan(), i, opt);
  auto all = mmp_exhaustive(X.fan(), i, opt);
  rep.mmp_trace = def.trace;
  std::set<std::string> seen;
  for (const auto& r : all) seen.insert(detail::terminal_label(r));
  rep.observed.assign(seen.begin(), seen.end());
  if (seen.size() == 1) {
    const auto& r = all.front();
    rep.type_label = detail::terminal_label(r) == "none" ? "undetermined"
                                                         : fixed_type_of(*r.trace.steps.back().type_label);
  } else {
    std::string s = "ambiguous{";
    for (std::size_t k = 0; k < rep.observed.size(); ++k) s += (k ? "," : "") + rep.observed[k];
    rep.type_label = s + "}";
  }
  std::vector<const MmpResult*> order{&def};
  for (const auto& r : all) order.push_back(&r);
  const MmpResult* pick = nullptr;
  for (auto* r : order) {
    auto lab = detail::terminal_label(*r);
    if (lab != "none" && expected_degK(fixed_type_of(*r->trace.steps.back().type_label))) {
      pick = r;
      break;
    }
  }
  if (!pick && def.end == MmpEnd::ContractedD) pick = &def;
  if (pick) {
    IVec rel = detail::pulled_back_relation(*pick);
    rep.C_D_relation = rel;
    rep.C_D_class = X.classes().curve_from_relation(rel);
    rep.pairing_D_CD = Rational(rel[static_cast<std::size_t>(i)]);
    Integer k = 0;
    for (const auto& a : rel) k += a;
    rep.degK_CD = k;
  }
  return rep;
}

inline std::vector<FixedDivisorReport> classify_all(const ToricVariety& X, const MmpOptions& opt = {}) {
  auto fixed = fixed_prime_divisors(X);
  for (auto& r : fixed) r = classify_fixed_divisor(X, std::move(r), opt);
  return fixed;
}

// ---------------------------------------------------------------------------
// Lefschetz defect and bounds.

struct LefschetzDefect {
  int delta = 0;
  int witness = -1;  // ray index of the last maximizing divisor
};

/// dim N₁(D_u, X): rank of the curve classes of walls whose cone contains u.
inline int n1_dimension(const ToricVariety& X, int u) {
  std::vector<IVec> g;
  for (const auto& w : X.walls())
    if (std::binary_search(w.cone.begin(), w.cone.end(), u)) g.push_back(birational::to_ivec(w.curve.coords));
  return static_cast<int>(rank(g, static_cast<std::size_t>(X.rho())));
}

inline LefschetzDefect lefschetz_defect(const ToricVariety& X) {
  LefschetzDefect out;
  for (int u = 0; u < X.num_rays(); ++u) {
    int codim = X.rho() - n1_dimension(X, u);
    if (out.witness < 0 || codim >= out.delta) out = {codim, u};
  }
  return out;
}

/// Rays split into two sets spanning complementary planes with the maximal
/// cones exactly the products of 2-cones: X is a product of two surfaces.
inline std::optional<std::pair<Cone, Cone>> product_of_surfaces(const Fan& f) {
  if (f.dim != 4) return std::nullopt;
  const int m = f.num_rays();
  for (unsigned mask = 1; mask < (1u << m); mask += 2) {
    Cone A, B;
    for (int i = 0; i < m; ++i) (mask >> i & 1u ? A : B).push_back(i);
    if (A.size() < 3 || B.size() < 3) continue;
    std::vector<IVec> ra, rb;
    for (int i : A) ra.push_back(f.rays[static_cast<std::size_t>(i)]);
    for (int i : B) rb.push_back(f.rays[static_cast<std::size_t>(i)]);
    if (rank(ra, 4) != 2 || rank(rb, 4) != 2) continue;
    std::set<Cone> pa, pb;
    bool ok = true;
    for (const auto& c : f.max_cones) {
      Cone a, b;
      for (int i : c) (std::binary_search(A.begin(), A.end(), i) ? a : b).push_back(i);
      if (a.size() != 2) {
        ok = false;
        break;
      }
      pa.insert(a);
      pb.insert(b);
    }
    if (ok && pa.size() * pb.size() == f.max_cones.size()) return std::make_pair(A, B);
  }
  return std::nullopt;
}

struct BoundClaim {
  std::string claim;
  bool applicable = false;
  bool holds = true;
  std::string detail;
};

/// Evaluates the δ and fiber-type bounds on a toric Fano 4-fold.
inline std::vector<BoundClaim> verify_bounds(const ToricVariety& X) {
  X.require_dim4();
  if (!X.is_fano()) throw MoriError("verify_bounds: fan is not Fano");
  auto d = lefschetz_defect(X);
  const int rho = X.rho();
  const bool product = product_of_surfaces(X.fan()).has_value();
  std::vector<BoundClaim> out;
  auto add = [&](std::string claim, bool applicable, bool holds) {
    out.push_back({std::move(claim), applicable, !applicable || holds,
                   "rho=" + std::to_string(rho) + " delta=" + std::to_string(d.delta) +
                       (product ? " product-of-surfaces" : "")});
  };
  add("not a product of surfaces => delta <= 3", !product, d.delta <= 3);
  add("delta = 3 => rho <= 6", !product && d.delta == 3, rho <= 6);
  add("delta = 2 => rho <= 12", !product && d.delta == 2, rho <= 12);
  bool fiber = false;
  for (const auto& R : birational::extremal_rays(X))
    fiber = fiber || R.contraction.kind == birational::ContractionKind::FiberType;
  add("elementary fiber-type contraction => rho <= 11", fiber, rho <= 11);
  return out;
}

// ---------------------------------------------------------------------------
// Mori chamber decomposition.

struct Chamber {
  RationalCone cone;
  Fan fan;            // the SQM, same rays as the input
  bool smooth = true;
  std::string hash;
};

struct ChamberFan {
  RationalCone mov;
  std::vector<Chamber> chambers;                          // chambers[0] = Nef(X)
  std::vector<std::pair<std::size_t, std::size_t>> edges; // adjacency across interior walls
};

namespace detail {

inline std::vector<IVec> arrangement_normals(const std::vector<IVec>& v, std::size_t rho) {
  std::set<IVec> out;
  const std::size_t m = v.size();
  if (rho < 2) return {};
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(rho - 1), true);
  do {
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) rows.push_back(v[i]);
    if (rank(rows, rho) != rho - 1) continue;
    auto n = orthogonal_complement(rows, rho);
    IVec h = n.front();
    for (const auto& x : h)
      if (x != 0) {
        if (x < 0) h = neg(h);
        break;
      }
    out.insert(h);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {out.begin(), out.end()};
}

/// Maximal cones of the regular triangulation selected by the generic class w.
inline std::vector<Cone> triangulation_for(const Fan& f, const std::vector<IVec>& v, const IVec& w) {
  const int m = f.num_rays(), n = f.dim;
  std::vector<Cone> out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    Cone sigma;
    std::vector<IVec> cols;
    for (int j = 0; j < m; ++j) {
      if (pick[static_cast<std::size_t>(j)])
        sigma.push_back(j);
      else
        cols.push_back(v[static_cast<std::size_t>(j)]);
    }
    if (rank(cols, w.size()) != w.size()) continue;
    auto x = solve_columns(cols, to_qvec(w));
    if (x && std::all_of(x->begin(), x->end(), [](const Rational& q) { return q > 0; })) out.push_back(sigma);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline RationalCone chamber_of(const std::vector<Cone>& sigmas, const std::vector<IVec>& v, std::size_t rho) {
  std::vector<RationalCone> parts;
  for (const auto& s : sigmas) {
    std::vector<IVec> g;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!std::binary_search(s.begin(), s.end(), static_cast<int>(j))) g.push_back(v[j]);
    parts.push_back(RationalCone::from_generators(g, rho));
  }
  return cones::intersect_all(parts, rho);
}

inline bool proportional(const IVec& a, const IVec& b) { return primitive(a) == primitive(b); }

}  // namespace detail

/// Full-dimensional chambers of Mov(X) reached from Nef(X) by crossing
/// interior walls, each with its reconstructed SQM fan.
inline ChamberFan mori_chambers(const ToricVariety& X, std::size_t max_chambers = 10000) {
  const auto rho = static_cast<std::size_t>(X.rho());
  const Fan& f0 = X.fan();
  auto v = prime_classes(X);
  ChamberFan out;
  out.mov = movable_cone(X);
  if (!out.mov.full_dimensional()) throw MoriError("mori_chambers: Mov(X) is not full-dimensional");
  auto arr = detail::arrangement_normals(v, rho);
  std::mt19937 rng(20240531);
  std::map<std::vector<Cone>, std::size_t> index;

  auto add = [&](std::vector<Cone> sigmas) -> std::size_t {
    std::sort(sigmas.begin(), sigmas.end());
    auto it = index.find(sigmas);
    if (it != index.end()) return it->second;
    Chamber ch;
    ch.fan.dim = f0.dim;
    ch.fan.rays = f0.rays;
    ch.fan.labels = f0.labels;
    ch.fan.max_cones = sigmas;
    ch.fan.normalize_cones();
    auto rep = validate(ch.fan);
    for (const auto& c : rep.checks)
      if (!c.pass && c.name != "smoothness")
        throw MoriError("mori_chambers: reconstructed fan is not a simplicial complete fan: " + c.name + ": " + c.witness);
    ch.smooth = rep.check("smoothness").pass;
    ch.cone = detail::chamber_of(sigmas, v, rho);
    ch.hash = fan_hash(ch.fan);
    if (!ch.cone.full_dimensional()) throw MoriError("mori_chambers: degenerate chamber");
    out.chambers.push_back(std::move(ch));
    index.emplace(std::move(sigmas), out.chambers.size() - 1);
    return out.chambers.size() - 1;
  };

  add(f0.max_cones);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t k = 0; k < out.chambers.size(); ++k) {
    if (out.chambers.size() > max_chambers) throw MoriError("mori_chambers: chamber cap exceeded");
    const RationalCone C = out.chambers[k].cone;
    for (const auto& h : C.facets()) {
      std::vector<IVec> fr;
      for (const auto& r : C.extreme_rays())
        if (dot(h, r) == 0) fr.push_back(r);
      // Generic point of the facet's relative interior.
      IVec p;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 200) throw MoriError("mori_chambers: no generic facet point found");
        p.assign(rho, 0);
        std::uniform_int_distribution<int> coef(1, 97 + attempt * 50);
        for (const auto& r : fr) {
          Integer c = coef(rng);
          for (std::size_t j = 0; j < rho; ++j) p[j] += c * r[j];
        }
        bool generic = true;
        for (const auto& g : arr)
          if (!detail::proportional(g, h) && !detail::proportional(neg(g), h) && dot(g, p) == 0) generic = false;
        if (generic) break;
      }
      bool boundary = false;
      for (const auto& g : out.mov.facets())
        if (dot(g, p) == 0) boundary = true;
      if (boundary) continue;
      // Step off the facet, staying clear of every other arrangement hyperplane.
      std::optional<Rational> bound;
      for (const auto& g : arr) {
        Integer gp = dot(g, p), gh = dot(g, h);
        if (gp == 0 || gh == 0) continue;
        Rational t = Rational(abs(gp)) / Rational(abs(gh));
        if (!bound || t < *bound) bound = t;
      }
      Rational eps = bound ? *bound / 2 : Rational(1);
      QVec wq(rho);
      for (std::size_t j = 0; j < rho; ++j) wq[j] = Rational(p[j]) - eps * Rational(h[j]);
      IVec w = primitive(wq);
      auto sigmas = detail::triangulation_for(f0, v, w);
      std::size_t j = add(std::move(sigmas));
      if (j != k) edges.insert({std::min(j, k), std::max(j, k)});
    }
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

}  // namespace fano4::mori
