#pragma once

// Built-in fans: projective spaces and their products, blow-ups, and the
// worked examples exercised by the replay checklists.

#include "fano4/arith.hpp"
#include "fano4/birational.hpp"
#include "fano4/fan.hpp"
#include "fano4/mori.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fano4::library {

/// P^k: rays e_1..e_k, e_0 = −Σ e_i; every k-subset is a maximal cone.
inline Fan projective_space(int k) {
  Fan f;
  f.dim = k;
  for (int i = 0; i < k; ++i) {
    IVec e(static_cast<std::size_t>(k));
    e[static_cast<std::size_t>(i)] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(IVec(static_cast<std::size_t>(k), Integer(-1)));
  for (int skip = 0; skip <= k; ++skip) {
    Cone c;
    for (int i = 0; i <= k; ++i)
      if (i != skip) c.push_back(i);
    f.max_cones.push_back(c);
  }
  f.normalize_cones();
  return f;
}

inline Fan product(const Fan& a, const Fan& b) {
  Fan f;
  f.dim = a.dim + b.dim;
  for (const auto& r : a.rays) {
    IVec v(r);
    v.resize(static_cast<std::size_t>(f.dim));
    f.rays.push_back(v);
  }
  for (const auto& r : b.rays) {
    IVec v(static_cast<std::size_t>(a.dim));
    v.insert(v.end(), r.begin(), r.end());
    f.rays.push_back(v);
  }
  for (const auto& [k, v] : a.labels) f.labels[k] = v;
  for (const auto& [k, v] : b.labels) f.labels[k + a.num_rays()] = v;
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      Cone c = ca;
      for (int i : cb) c.push_back(i + a.num_rays());
      f.max_cones.push_back(c);
    }
  f.normalize_cones();
  return f;
}

/// Hirzebruch surface F_a: rays (1,0), (0,1), (−1,a), (0,−1).
inline Fan hirzebruch(int a) {
  Fan f;
  f.dim = 2;
  f.rays = {ivec({1, 0}), ivec({0, 1}), ivec({-1, a}), ivec({0, -1})};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  f.normalize_cones();
  return f;
}

/// Del Pezzo surface of degree 7 (P² blown up in two points).
inline Fan del_pezzo7() {
  Fan f;
  f.dim = 2;
  f.rays = {ivec({1, 0}), ivec({1, 1}), ivec({0, 1}), ivec({-1, -1}), ivec({0, -1})};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  f.normalize_cones();
  return f;
}

/// Del Pezzo surface of degree 6 (P² blown up in three points).
inline Fan del_pezzo6() {
  Fan f;
  f.dim = 2;
  f.rays = {ivec({1, 0}), ivec({1, 1}), ivec({0, 1}), ivec({-1, 0}), ivec({-1, -1}), ivec({0, -1})};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}};
  f.normalize_cones();
  return f;
}

inline Fan p4() { return projective_space(4); }
inline Fan p1xp3() { return product(projective_space(1), projective_space(3)); }
inline Fan p2xp2() { return product(projective_space(2), projective_space(2)); }
inline Fan p1xp1xp2() { return product(product(projective_space(1), projective_space(1)), projective_space(2)); }
inline Fan p1_4() {
  auto p1 = projective_space(1);
  return product(product(p1, p1), product(p1, p1));
}
inline Fan f2xp2() { return product(hirzebruch(2), projective_space(2)); }
inline Fan p1xp1xf1() { return product(product(projective_space(1), projective_space(1)), hirzebruch(1)); }
inline Fan s6xs6() { return product(del_pezzo6(), del_pezzo6()); }
inline Fan s7xp1xp1() { return product(del_pezzo7(), product(projective_space(1), projective_space(1))); }

/// Weighted projective space P(1,1,1,1,2): a complete simplicial fan that is
/// not smooth.
inline Fan weighted_p11112() {
  Fan f;
  f.dim = 4;
  f.rays = {ivec({1, 0, 0, 0}), ivec({0, 1, 0, 0}), ivec({0, 0, 1, 0}), ivec({-1, -1, -1, -2}), ivec({0, 0, 0, 1})};
  for (int skip = 0; skip < 5; ++skip) {
    Cone c;
    for (int i = 0; i < 5; ++i)
      if (i != skip) c.push_back(i);
    f.max_cones.push_back(c);
  }
  f.normalize_cones();
  return f;
}

/// P⁴ blown up at the torus-fixed point of the cone {e1,e2,e3,e4}.
inline Fan bl_pt_p4() {
  Fan f = birational::blowup(p4(), {0, 1, 2, 3});
  f.labels = {{0, "e1"}, {1, "e2"}, {2, "e3"}, {3, "e4"}, {4, "e0"}, {5, "E"}};
  return f;
}

/// P⁴ blown up along the invariant line V(e1,e2,e3).
inline Fan bl_line_p4() { return birational::blowup(p4(), {0, 1, 2}); }

/// P⁴ blown up along the invariant plane V(e1,e2).
inline Fan bl_plane_p4() { return birational::blowup(p4(), {0, 1}); }

/// A toric Fano 4-fold with ρ = 3 and a fixed prime divisor with two
/// elementary contractions of different type: the section D_{f+} of a
/// P¹-bundle over P¹×P² contracts either onto a surface or onto a curve.
inline Fan ambiguous_example() {
  Fan f;
  f.dim = 4;
  f.rays = {ivec({1, 0, 0, 1}), ivec({-1, 0, 0, 0}), ivec({0, 1, 0, 1}), ivec({0, 0, 1, 0}),
            ivec({0, -1, -1, 0}), ivec({0, 0, 0, 1}), ivec({0, 0, 0, -1})};
  f.labels = {{0, "a1"}, {1, "a2"}, {2, "b1"}, {3, "b2"}, {4, "b3"}, {5, "f+"}, {6, "f-"}};
  const Cone as[] = {{0}, {1}};
  const Cone bs[] = {{2, 3}, {2, 4}, {3, 4}};
  const Cone fs[] = {{5}, {6}};
  for (const auto& a : as)
    for (const auto& b : bs)
      for (const auto& c : fs) {
        Cone k = a;
        k.insert(k.end(), b.begin(), b.end());
        k.insert(k.end(), c.begin(), c.end());
        f.max_cones.push_back(make_cone(k));
      }
  f.normalize_cones();
  return f;
}

/// The P²-bundle over P² underlying the example with a fixed divisor whose
/// two MMPs end in contractions of different type: rays b1, b2, b3 (base)
/// and f1, f2, f0 (fiber), with b1 + b2 + b3 = f1 + 2 f2.
inline Fan special_bundle() {
  Fan f;
  f.dim = 4;
  f.rays = {ivec({1, 0, 0, 0}), ivec({0, 1, 0, 0}), ivec({-1, -1, 1, 2}), ivec({0, 0, 1, 0}), ivec({0, 0, 0, 1}),
            ivec({0, 0, -1, -1})};
  f.labels = {{0, "b1"}, {1, "b2"}, {2, "b3"}, {3, "f1"}, {4, "f2"}, {5, "f0"}};
  for (int sb = 0; sb < 3; ++sb)
    for (int sf = 3; sf < 6; ++sf) {
      Cone c;
      for (int i = 0; i < 6; ++i)
        if (i != sb && i != sf) c.push_back(i);
      f.max_cones.push_back(c);
    }
  f.normalize_cones();
  return f;
}

/// The bundle blown up along the invariant surface V(f1, f2); ρ = 3.
inline Fan special_example() {
  Fan f = birational::blowup(special_bundle(), {3, 4});
  f.labels[6] = "E";
  return f;
}

/// Bl_p P⁴ blown up along the transform of an invariant plane through p.
inline Fan plane_over_point() { return birational::blowup(bl_pt_p4(), {0, 1}); }

/// Toric Fano 4-fold with ρ = 5 reached from plane_over_point() by blowing up
/// two torus-fixed points and running the −K MMP, which consists of flips only.
struct SqmConstruction {
  Fan base;                         // ρ = 3
  Cone point_a, point_b;            // blown-up maximal cones of the base
  Fan blown_up;                     // ρ = 5, not Fano
  mori::MmpResult flips;            // the SQM to the Fano model
  Fan fano;
};

/// First pair of fixed points (in cone order) whose two-point blow-up is
/// connected to a Fano 4-fold by −K-negative flips alone.
inline std::optional<SqmConstruction> two_point_sqm(const Fan& base) {
  for (std::size_t a = 0; a < base.max_cones.size(); ++a)
    for (std::size_t b = a + 1; b < base.max_cones.size(); ++b) {
      Fan x1 = birational::blowup(base, base.max_cones[a]);
      Fan x2 = birational::blowup(x1, base.max_cones[b]);
      auto r = mori::mmp_for_divisor(x2, QVec(static_cast<std::size_t>(x2.num_rays()), Rational(1)));
      if (r.end != mori::MmpEnd::Nef) continue;
      bool flips_only = std::all_of(r.trace.steps.begin(), r.trace.steps.end(),
                                    [](const birational::TraceStep& s) { return s.move == birational::MoveKind::Flip; });
      if (!flips_only || !toric::ToricVariety(r.final_fan).is_fano()) continue;
      SqmConstruction out{base, base.max_cones[a], base.max_cones[b], x2, r, r.final_fan};
      return out;
    }
  return std::nullopt;
}

inline Fan two_point_tower() {
  auto c = two_point_sqm(plane_over_point());
  if (!c) throw Error("two_point_tower: no two-point blow-up reaches a Fano model by flips");
  return c->fano;
}

struct NamedFan {
  std::string name;
  std::function<Fan()> make;
};

/// Smooth projective 4-folds used by corpus-wide checks.
inline std::vector<NamedFan> corpus() {
  return {
      {"P4", p4},
      {"P1xP3", p1xp3},
      {"P2xP2", p2xp2},
      {"P1xP1xP2", p1xp1xp2},
      {"P1xP1xP1xP1", p1_4},
      {"F2xP2", f2xp2},
      {"P1xP1xF1", p1xp1xf1},
      {"S6xS6", s6xs6},
      {"S7xP1xP1", s7xp1xp1},
      {"Bl_pt_P4", bl_pt_p4},
      {"Bl_line_P4", bl_line_p4},
      {"Bl_plane_P4", bl_plane_p4},
      {"PE_P1xP2", ambiguous_example},
      {"Bl_PE_P2", special_example},
      {"TwoPointTower", two_point_tower},
  };
}

inline std::optional<Fan> by_name(const std::string& name) {
  for (const auto& nf : corpus())
    if (nf.name == name) return nf.make();
  if (name == "P11112") return weighted_p11112();
  return std::nullopt;
}

}  // namespace fano4::library
