#pragma once

// Torus-equivariant birational surgery on smooth complete fans: extremal rays
// of NE(X) with their contraction data, star subdivisions (blow-ups), inverse
// star subdivisions (smooth blow-downs), and bistellar flips.

#include "fano4/arith.hpp"
#include "fano4/cone.hpp"
#include "fano4/fan.hpp"
#include "fano4/toric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fano4::birational {

using toric::CurveClass;
using toric::DivisorClass;
using toric::ToricVariety;
using toric::Wall;

class SurgeryError : public Error {
 public:
  using Error::Error;
};

enum class ContractionKind { FiberType, Divisorial, Small };

/// Labels for elementary divisorial contractions of 4-folds, (a, b) meaning
/// exceptional locus of dimension a mapped onto a b-dimensional image.
enum class TypeLabel { T32, T32sm, T31, T31sm, T30sm, T30Q, T30other };

inline std::string to_string(ContractionKind k) {
  switch (k) {
    case ContractionKind::FiberType: return "fiber_type";
    case ContractionKind::Divisorial: return "divisorial";
    case ContractionKind::Small: return "small";
  }
  return "?";
}

inline std::string to_string(TypeLabel t) {
  switch (t) {
    case TypeLabel::T32: return "(3,2)";
    case TypeLabel::T32sm: return "(3,2)^sm";
    case TypeLabel::T31: return "(3,1)";
    case TypeLabel::T31sm: return "(3,1)^sm";
    case TypeLabel::T30sm: return "(3,0)^sm";
    case TypeLabel::T30Q: return "(3,0)^Q";
    case TypeLabel::T30other: return "(3,0)";
  }
  return "?";
}

struct ContractionDescriptor {
  ContractionKind kind = ContractionKind::FiberType;
  std::optional<TypeLabel> type_label;  // divisorial rays only
  std::vector<int> exc_rays;            // rays with negative coefficient: Exc = V(exc_rays)
  std::vector<int> positive_rays;       // rays with positive coefficient
  int image_dim = 0;                    // dimension of the image of the exceptional locus (of X for fiber type)
};

/// An extremal ray of NE(X) with its primitive relation and contraction data.
struct ExtremalRay {
  CurveClass curve;                  // primitive lattice generator
  IVec relation;                     // (D_i · C)_i for the primitive generator
  Integer degK;                      // −K·C
  std::vector<std::size_t> walls;    // walls whose class lies on the ray
  ContractionDescriptor contraction;
};

inline IVec to_ivec(const QVec& q) {
  IVec v(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) throw Error("to_ivec: non-integral entry");
    v[i] = q[i].get_num();
  }
  return v;
}

/// Cone of curves: generated by the wall curve classes.
inline cones::RationalCone mori_cone(const ToricVariety& X) {
  std::vector<IVec> g;
  for (const auto& w : X.walls()) g.push_back(to_ivec(w.curve.coords));
  return cones::RationalCone::from_generators(g, static_cast<std::size_t>(X.rho()));
}

/// Projective iff NE(X) is pointed and full-dimensional (Nef has interior).
inline bool is_projective(const ToricVariety& X) {
  auto ne = mori_cone(X);
  return ne.pointed();
}

/// Star subdivision of the fan at the cone `center` (dimension >= 2): the
/// blow-up along the invariant subvariety V(center). The new ray is appended.
inline Fan blowup(const Fan& f, Cone center) {
  std::sort(center.begin(), center.end());
  if (center.size() < 2) throw SurgeryError("blowup: center must have dimension >= 2");
  if (!f.is_cone(center)) throw SurgeryError("blowup: " + cone_string(center) + " is not a cone of the fan");
  IVec u(static_cast<std::size_t>(f.dim));
  for (int i : center)
    for (int j = 0; j < f.dim; ++j) u[static_cast<std::size_t>(j)] += f.rays[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  u = primitive(std::move(u));
  Fan g;
  g.dim = f.dim;
  g.rays = f.rays;
  g.labels = f.labels;
  const int e = f.num_rays();
  g.rays.push_back(u);
  for (const auto& c : f.max_cones) {
    if (!std::includes(c.begin(), c.end(), center.begin(), center.end())) {
      g.max_cones.push_back(c);
      continue;
    }
    for (int i : center) {
      Cone d;
      for (int k : c)
        if (k != i) d.push_back(k);
      d.push_back(e);
      g.max_cones.push_back(make_cone(d));
    }
  }
  g.normalize_cones();
  require_valid(g);
  return g;
}

namespace detail {

inline Fan remove_ray(const Fan& f, int e, const std::vector<Cone>& cones) {
  Fan g;
  g.dim = f.dim;
  for (int i = 0; i < f.num_rays(); ++i)
    if (i != e) g.rays.push_back(f.rays[static_cast<std::size_t>(i)]);
  for (const auto& [k, v] : f.labels) {
    if (k == e) continue;
    g.labels[k > e ? k - 1 : k] = v;
  }
  for (const auto& c : cones) {
    Cone d;
    for (int i : c) {
      if (i == e) throw SurgeryError("remove_ray: ray still used");
      d.push_back(i > e ? i - 1 : i);
    }
    g.max_cones.push_back(make_cone(d));
  }
  g.normalize_cones();
  return g;
}

/// Inverse star subdivision of ray e over the center S, or nullopt when the
/// star of e is not the subdivision of the cones containing S.
inline std::optional<std::vector<Cone>> unsubdivide(const Fan& f, int e, const Cone& S) {
  std::set<Cone> merged;
  std::size_t star = 0;
  for (const auto& c : f.max_cones) {
    if (!std::binary_search(c.begin(), c.end(), e)) continue;
    ++star;
    Cone rest;
    for (int i : c)
      if (i != e) rest.push_back(i);
    Cone missing;
    for (int s : S)
      if (!std::binary_search(rest.begin(), rest.end(), s)) missing.push_back(s);
    if (missing.size() != 1) return std::nullopt;
    rest.push_back(missing[0]);
    merged.insert(make_cone(rest));
  }
  if (star != merged.size() * S.size()) return std::nullopt;
  std::vector<Cone> out;
  for (const auto& c : f.max_cones)
    if (!std::binary_search(c.begin(), c.end(), e)) out.push_back(c);
  for (const auto& c : merged) {
    if (f.has_max_cone(c)) return std::nullopt;
    out.push_back(c);
  }
  return out;
}

inline std::vector<int> neighbours(const Fan& f, int e) {
  std::set<int> nb;
  for (const auto& c : f.max_cones)
    if (std::binary_search(c.begin(), c.end(), e))
      for (int i : c)
        if (i != e) nb.insert(i);
  return {nb.begin(), nb.end()};
}

}  // namespace detail

/// Center cone S (as ray indices of f) such that removing ray e is the inverse
/// of the star subdivision at S, if any.
inline std::optional<Cone> blowdown_center(const Fan& f, int e) {
  if (e < 0 || e >= f.num_rays()) throw SurgeryError("contract: ray index out of range");
  auto nb = detail::neighbours(f, e);
  const auto& ue = f.rays[static_cast<std::size_t>(e)];
  const std::size_t k = nb.size();
  for (std::size_t size = 2; size <= static_cast<std::size_t>(f.dim) && size <= k; ++size) {
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Cone S;
      IVec sum(static_cast<std::size_t>(f.dim));
      for (std::size_t i = 0; i < k; ++i)
        if (pick[i]) {
          S.push_back(nb[i]);
          for (int j = 0; j < f.dim; ++j) sum[static_cast<std::size_t>(j)] += f.rays[static_cast<std::size_t>(nb[i])][static_cast<std::size_t>(j)];
        }
      if (sum == ue && detail::unsubdivide(f, e, S)) return S;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

/// Smooth blow-down: removes ray e and re-fans its star over the center cone.
/// Throws SurgeryError when the result would leave the smooth toric category
/// or e is not the exceptional divisor of a smooth blow-up.
inline Fan contract(const Fan& f, int e) {
  auto S = blowdown_center(f, e);
  if (!S)
    throw SurgeryError("contract: ray " + std::to_string(e) +
                       " is not the exceptional divisor of a smooth equivariant blow-up");
  auto cones = detail::unsubdivide(f, e, *S);
  Fan g = detail::remove_ray(f, e, *cones);
  auto rep = validate(g);
  if (!rep.ok()) throw SurgeryError("contract: result is not a smooth complete fan: " + rep.first_failure());
  return g;
}

/// Smooth blow-down of ray e onto a given center cone. An exceptional divisor
/// can admit more than one smooth blow-down (e.g. P¹×P² over a line or over a
/// plane); this overload picks the one with the given center.
inline Fan contract(const Fan& f, int e, const Cone& center) {
  if (e < 0 || e >= f.num_rays()) throw SurgeryError("contract: ray index out of range");
  IVec sum(static_cast<std::size_t>(f.dim));
  for (int i : center) {
    if (i < 0 || i >= f.num_rays() || i == e) throw SurgeryError("contract: bad center " + cone_string(center));
    for (int j = 0; j < f.dim; ++j) sum[static_cast<std::size_t>(j)] += f.rays[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  auto cones = sum == f.rays[static_cast<std::size_t>(e)] ? detail::unsubdivide(f, e, make_cone(center)) : std::nullopt;
  if (!cones)
    throw SurgeryError("contract: ray " + std::to_string(e) + " is not the star subdivision of " + cone_string(center));
  Fan g = detail::remove_ray(f, e, *cones);
  auto rep = validate(g);
  if (!rep.ok()) throw SurgeryError("contract: result is not a smooth complete fan: " + rep.first_failure());
  return g;
}

/// Smooth blow-down of a divisorial extremal ray onto the cone of its
/// positive rays.
inline Fan contract(const Fan& f, const ExtremalRay& R) {
  if (R.contraction.kind != ContractionKind::Divisorial)
    throw SurgeryError("contract: extremal ray is " + to_string(R.contraction.kind) + ", not divisorial");
  const int e = R.contraction.exc_rays.front();
  auto cones = detail::unsubdivide(f, e, Cone(R.contraction.positive_rays.begin(), R.contraction.positive_rays.end()));
  if (!cones) throw SurgeryError("contract: ray " + std::to_string(e) + " is not a smooth blow-up over its positive rays");
  Fan g = detail::remove_ray(f, e, *cones);
  auto rep = validate(g);
  if (!rep.ok()) throw SurgeryError("contract: result is not a smooth complete fan: " + rep.first_failure());
  return g;
}

/// Target of a divisorial contraction that may leave the smooth category.
struct ContractedFan {
  Fan fan;             // maximal cones may be non-simplicial
  bool simplicial = true;
  bool smooth = true;  // validation passed (only meaningful when simplicial)
  Cone image_cone;     // cone (target indices) whose orbit closure is the image of Exc
};

namespace detail {

inline Cone reindex_without(const Cone& c, int e) {
  Cone d;
  for (int i : c) d.push_back(i > e ? i - 1 : i);
  return make_cone(d);
}

}  // namespace detail

/// General divisorial contraction of an extremal ray with exceptional ray e
/// and positive set β: cones in the star of e are merged into (σ∖e) ∪ β.
inline ContractedFan contract_divisorial(const Fan& f, const ExtremalRay& R) {
  if (R.contraction.kind != ContractionKind::Divisorial) throw SurgeryError("contract_divisorial: ray is not divisorial");
  const int e = R.contraction.exc_rays.front();
  const auto& beta = R.contraction.positive_rays;
  std::set<Cone> cones;
  for (const auto& c : f.max_cones) {
    if (!std::binary_search(c.begin(), c.end(), e)) {
      cones.insert(c);
      continue;
    }
    std::set<int> u(beta.begin(), beta.end());
    for (int i : c)
      if (i != e) u.insert(i);
    cones.insert(Cone(u.begin(), u.end()));
  }
  // Drop cones contained in others.
  std::vector<Cone> maximal;
  for (const auto& c : cones) {
    bool contained = false;
    for (const auto& d : cones)
      if (d != c && d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) contained = true;
    if (!contained) maximal.push_back(c);
  }
  ContractedFan out;
  out.fan.dim = f.dim;
  for (int i = 0; i < f.num_rays(); ++i)
    if (i != e) out.fan.rays.push_back(f.rays[static_cast<std::size_t>(i)]);
  for (const auto& c : maximal) {
    if (static_cast<int>(c.size()) != f.dim) out.simplicial = false;
    out.fan.max_cones.push_back(detail::reindex_without(c, e));
  }
  out.fan.normalize_cones();
  out.image_cone = detail::reindex_without(Cone(beta.begin(), beta.end()), e);
  out.smooth = out.simplicial && validate(out.fan).ok();
  return out;
}

/// Classifies the contraction of an extremal ray from its primitive relation.
inline ContractionDescriptor describe_contraction(const Fan& f, const IVec& relation, const Integer& degK) {
  ContractionDescriptor d;
  for (int i = 0; i < f.num_rays(); ++i) {
    const auto& a = relation[static_cast<std::size_t>(i)];
    if (a < 0) d.exc_rays.push_back(i);
    if (a > 0) d.positive_rays.push_back(i);
  }
  const int na = static_cast<int>(d.exc_rays.size()), nb = static_cast<int>(d.positive_rays.size());
  d.image_dim = f.dim - na - nb + 1;
  if (na == 0) {
    d.kind = ContractionKind::FiberType;
    return d;
  }
  if (na >= 2) {
    d.kind = ContractionKind::Small;
    return d;
  }
  d.kind = ContractionKind::Divisorial;
  const int e = d.exc_rays.front();
  bool unit = relation[static_cast<std::size_t>(e)] == -1;
  for (int j : d.positive_rays) unit = unit && relation[static_cast<std::size_t>(j)] == 1;
  bool sm = false;
  if (unit) {
    auto cones = detail::unsubdivide(f, e, Cone(d.positive_rays.begin(), d.positive_rays.end()));
    if (cones) sm = validate(detail::remove_ray(f, e, *cones)).ok();
  }
  const int m = d.image_dim;
  if (sm) {
    d.type_label = m == 2 ? TypeLabel::T32sm : m == 1 ? TypeLabel::T31sm : TypeLabel::T30sm;
  } else if (m == 2) {
    d.type_label = TypeLabel::T32;
  } else if (m == 1) {
    d.type_label = TypeLabel::T31;
  } else if (relation[static_cast<std::size_t>(e)] == -1 && degK == 2) {
    // Exceptional divisor a quadric with normal bundle O(−1): lines have
    // E·C = −1 and −K·C = 2.
    d.type_label = TypeLabel::T30Q;
  } else {
    d.type_label = TypeLabel::T30other;
  }
  return d;
}

/// Extremal rays of NE(X), each with its walls and contraction descriptor,
/// ordered by the smallest index of a wall on the ray.
inline std::vector<ExtremalRay> extremal_rays(const ToricVariety& X) {
  const auto& walls = X.walls();
  auto ne = mori_cone(X);
  if (!ne.pointed()) throw SurgeryError("extremal_rays: fan is not projective (NE(X) contains a line)");
  std::vector<ExtremalRay> out;
  for (const auto& g : ne.extreme_rays()) {
    ExtremalRay R;
    R.curve.coords = to_qvec(g);
    R.relation = to_ivec(X.classes().relation_of(R.curve));
    R.degK = 0;
    for (const auto& a : R.relation) R.degK += a;
    for (const auto& w : walls)
      if (primitive(to_ivec(w.curve.coords)) == g) R.walls.push_back(w.index);
    R.contraction = describe_contraction(X.fan(), R.relation, R.degK);
    out.push_back(std::move(R));
  }
  std::sort(out.begin(), out.end(), [](const ExtremalRay& a, const ExtremalRay& b) {
    std::size_t wa = a.walls.empty() ? SIZE_MAX : a.walls.front();
    std::size_t wb = b.walls.empty() ? SIZE_MAX : b.walls.front();
    return wa < wb;
  });
  return out;
}

/// Is the small ray's circuit the 4-fold exceptional-plane pattern: five rays,
/// coefficients ±1, split 2 against 3?
inline bool is_flippable_pattern(const ExtremalRay& R, int dim) {
  const auto& d = R.contraction;
  if (d.kind != ContractionKind::Small) return false;
  const auto na = d.exc_rays.size(), nb = d.positive_rays.size();
  if (static_cast<int>(na + nb) != dim + 1) return false;
  if (!((na == 2 && nb == 3) || (na == 3 && nb == 2))) return false;
  for (const auto& a : R.relation)
    if (a != 0 && a != 1 && a != -1) return false;
  return true;
}

/// Bistellar exchange on the circuit of a small extremal ray: cones
/// Z∖{j} ∪ τ (j positive) are replaced by Z∖{i} ∪ τ (i negative) for every
/// link cone τ of a wall on the ray.
/// No restriction on the circuit; the result must still be a smooth fan.
inline Fan bistellar_flip(const ToricVariety& X, const ExtremalRay& R) {
  const Fan& f = X.fan();
  if (R.contraction.kind != ContractionKind::Small)
    throw SurgeryError("flip: extremal ray is not small (" + to_string(R.contraction.kind) + ")");
  Cone Z;
  for (int i = 0; i < f.num_rays(); ++i)
    if (R.relation[static_cast<std::size_t>(i)] != 0) Z.push_back(i);
  std::set<Cone> links;
  for (auto wi : R.walls) {
    const auto& w = X.walls()[wi];
    std::set<int> all(w.cone.begin(), w.cone.end());
    all.insert(w.left);
    all.insert(w.right);
    Cone tau;
    for (int i : all)
      if (!std::binary_search(Z.begin(), Z.end(), i)) tau.push_back(i);
    links.insert(tau);
  }
  std::set<Cone> cones(f.max_cones.begin(), f.max_cones.end());
  for (const auto& tau : links) {
    auto with = [&](int drop) {
      Cone c;
      for (int i : Z)
        if (i != drop) c.push_back(i);
      c.insert(c.end(), tau.begin(), tau.end());
      return make_cone(c);
    };
    for (int j : R.contraction.positive_rays) {
      auto c = with(j);
      if (!cones.erase(c)) throw SurgeryError("flip: expected cone " + cone_string(c) + " missing");
    }
    for (int i : R.contraction.exc_rays) cones.insert(with(i));
  }
  Fan g;
  g.dim = f.dim;
  g.rays = f.rays;
  g.labels = f.labels;
  g.max_cones.assign(cones.begin(), cones.end());
  g.normalize_cones();
  auto rep = validate(g);
  if (!rep.ok()) throw SurgeryError("flip: result invalid: " + rep.first_failure());
  return g;
}

/// Flip restricted to the exceptional-plane circuit (2 against 3, unit
/// coefficients); other small rays are rejected.
inline Fan flip(const ToricVariety& X, const ExtremalRay& R) {
  if (R.contraction.kind != ContractionKind::Small)
    throw SurgeryError("flip: extremal ray is not small (" + to_string(R.contraction.kind) + ")");
  if (!is_flippable_pattern(R, X.dim()))
    throw SurgeryError("flip: unsupported circuit, relation " + to_string_vec(R.relation));
  return bistellar_flip(X, R);
}

/// Flip of the small extremal ray spanned by the given curve class.
inline Fan flip(const ToricVariety& X, const CurveClass& c) {
  IVec p = primitive(c.coords);
  for (const auto& R : extremal_rays(X))
    if (primitive(R.curve.coords) == p) return flip(X, R);
  throw SurgeryError("flip: class " + to_string_vec(c.coords) + " does not span an extremal ray");
}

/// −K·C_ω for every wall, keyed by wall index.
inline std::map<std::size_t, Integer> anticanonical_wall_degrees(const ToricVariety& X) {
  std::map<std::size_t, Integer> out;
  for (const auto& w : X.walls()) out[w.index] = w.degK;
  return out;
}

// ---------------------------------------------------------------------------
// Traces.

/// (χ(−K), (−K)⁴, (−K)²·c₂, ρ) of a smooth complete 4-dimensional fan.
struct Invariants {
  Integer chi, degK4, c2K2;
  int rho = 0;
  friend bool operator==(const Invariants& a, const Invariants& b) {
    return a.chi == b.chi && a.degK4 == b.degK4 && a.c2K2 == b.c2K2 && a.rho == b.rho;
  }
};

inline Integer as_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw Error(std::string(what) + " is not an integer: " + q.get_str());
  return q.get_num();
}

inline Invariants invariants(const ToricVariety& X) {
  return {as_integer(X.chi_anticanonical(), "chi(-K)"), as_integer(X.degree(), "(-K)^4"),
          as_integer(X.c2K2(), "(-K)^2.c2"), X.rho()};
}

enum class MoveKind { Blowup, Flip, Contraction };

inline std::string to_string(MoveKind m) {
  switch (m) {
    case MoveKind::Blowup: return "blowup";
    case MoveKind::Flip: return "flip";
    case MoveKind::Contraction: return "contraction";
  }
  return "?";
}

struct TraceStep {
  MoveKind move = MoveKind::Flip;
  std::string detail;                    // human-readable wall / center description
  IVec relation;                         // extremal relation (flip, contraction)
  Cone center;                           // blow-up center
  std::optional<TypeLabel> type_label;   // contractions
  int removed_ray = -1;                  // contractions: exceptional ray index in `before`
  Rational divisor_degree;               // D·C for the tracked divisor (MMP traces)
  Fan before, after;
  bool after_smooth = true;
  std::optional<Invariants> ledger_before, ledger_after;
};

struct BirationalTrace {
  std::vector<TraceStep> steps;
};

}  // namespace fano4::birational
