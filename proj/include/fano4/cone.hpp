#pragma once

// Exact convex polyhedral cones with both descriptions.
//
// A cone C ⊆ Q^n is stored canonically as
//   lineality : RREF basis of C ∩ -C
//   rays      : extreme rays of C modulo lineality, projected onto the
//               orthogonal complement of the lineality space
//   equations : RREF basis of C^⊥
//   facets    : facet normals modulo equations, projected onto span(C)
// Every vector is primitive integral and each list is sorted, so two cones
// are equal iff these four lists are equal.

#include "fano4/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace fano4::cones {

namespace detail {

class Bits {
 public:
  void set(std::size_t i) {
    if (i / 64 >= w_.size()) w_.resize(i / 64 + 1, 0);
    w_[i / 64] |= (std::uint64_t{1} << (i % 64));
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t ow = k < o.w_.size() ? o.w_[k] : 0;
      if (w_[k] & ~ow) return false;
    }
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(std::min(w_.size(), o.w_.size()));
    for (std::size_t k = 0; k < r.w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct VRep {
  std::vector<IVec> lineality;
  std::vector<IVec> rays;
};

/// Double description: V-representation of {y : a·y >= 0 for all a}.
inline VRep double_description(const std::vector<IVec>& ineqs, std::size_t n) {
  std::vector<IVec> lin;
  for (std::size_t i = 0; i < n; ++i) {
    IVec e(n);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<IVec> rays;
  std::vector<Bits> zeros;

  // Deduplicate constraints up to positive scaling.
  std::vector<IVec> cons;
  {
    std::set<IVec> seen;
    for (const auto& a : ineqs) {
      if (a.size() != n) throw DimensionError("double_description: constraint dimension");
      if (is_zero(a)) continue;
      IVec p = primitive(a);
      if (seen.insert(p).second) cons.push_back(std::move(p));
    }
  }

  for (std::size_t k = 0; k < cons.size(); ++k) {
    const IVec& a = cons[k];
    std::size_t li = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        li = i;
        break;
      }
    if (li < lin.size()) {
      IVec l = lin[li];
      Integer al = dot(a, l);
      if (al < 0) {
        l = neg(std::move(l));
        al = -al;
      }
      std::vector<IVec> nl;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == li) continue;
        Integer ai = dot(a, lin[i]);
        IVec v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = al * lin[i][j] - ai * l[j];
        nl.push_back(primitive(std::move(v)));
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        Integer ar = dot(a, rays[r]);
        if (ar != 0) {
          IVec v(n);
          for (std::size_t j = 0; j < n; ++j) v[j] = al * rays[r][j] - ar * l[j];
          rays[r] = primitive(std::move(v));
        }
        zeros[r].set(k);
      }
      // l satisfies every earlier constraint with equality.
      Bits zl;
      for (std::size_t j = 0; j < k; ++j) zl.set(j);
      rays.push_back(primitive(std::move(l)));
      zeros.push_back(std::move(zl));
      lin = std::move(nl);
      continue;
    }

    std::vector<std::size_t> pos, negs, zer;
    std::vector<Integer> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      if (val[r] > 0)
        pos.push_back(r);
      else if (val[r] < 0)
        negs.push_back(r);
      else
        zer.push_back(r);
    }
    if (negs.empty()) {
      for (auto r : zer) zeros[r].set(k);
      continue;
    }
    const std::size_t need = n >= lin.size() + 2 ? n - lin.size() - 2 : 0;
    std::vector<IVec> nrays;
    std::vector<Bits> nzeros;
    for (auto p : pos) {
      nrays.push_back(rays[p]);
      nzeros.push_back(zeros[p]);
    }
    for (auto z : zer) {
      nrays.push_back(rays[z]);
      Bits b = zeros[z];
      b.set(k);
      nzeros.push_back(std::move(b));
    }
    for (auto p : pos)
      for (auto q : negs) {
        Bits common = zeros[p] & zeros[q];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(zeros[r])) adjacent = false;
        }
        if (!adjacent) continue;
        IVec v(n);
        Integer vp = val[p], vq = -val[q];
        for (std::size_t j = 0; j < n; ++j) v[j] = vp * rays[q][j] + vq * rays[p][j];
        nrays.push_back(primitive(std::move(v)));
        common.set(k);
        nzeros.push_back(std::move(common));
      }
    rays = std::move(nrays);
    zeros = std::move(nzeros);
  }
  return {std::move(lin), std::move(rays)};
}

/// Projects v onto the orthogonal complement of span(basis) and returns the
/// primitive integer representative.
inline IVec project_out(const IVec& v, const std::vector<IVec>& basis) {
  if (basis.empty()) return primitive(v);
  const std::size_t n = v.size();
  // Solve Gram system G c = B v, then v - Σ c_i b_i.
  const std::size_t k = basis.size();
  IntMatrix G(k, k);
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) G(i, j) = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto c = solve_rational(G, rhs);
  QVec out = to_qvec(v);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] -= (*c)[i] * basis[i][j];
  return primitive(out);
}

inline void canonical_pair(std::vector<IVec>& lin, std::vector<IVec>& rays, std::size_t n) {
  lin = span_basis(lin, n);
  std::set<IVec> s;
  for (const auto& r : rays) {
    IVec p = project_out(r, lin);
    if (!is_zero(p)) s.insert(std::move(p));
  }
  rays.assign(s.begin(), s.end());
}

}  // namespace detail

class RationalCone {
 public:
  RationalCone() = default;

  /// Cone generated by the given vectors (double-description completion).
  static RationalCone from_generators(const std::vector<IVec>& gens, std::size_t dim) {
    for (const auto& g : gens)
      if (g.size() != dim) throw DimensionError("from_generators: generator dimension mismatch");
    RationalCone c;
    c.dim_ = dim;
    auto dual = detail::double_description(gens, dim);  // generators of C^∨
    c.equations_ = std::move(dual.lineality);
    c.facets_ = std::move(dual.rays);
    detail::canonical_pair(c.equations_, c.facets_, dim);
    auto prim = detail::double_description(c.facet_normals(), dim);
    c.lineality_ = std::move(prim.lineality);
    c.rays_ = std::move(prim.rays);
    detail::canonical_pair(c.lineality_, c.rays_, dim);
    return c;
  }

  static RationalCone from_generators(const std::vector<QVec>& gens, std::size_t dim) {
    std::vector<IVec> ig;
    for (const auto& g : gens) ig.push_back(primitive(g));
    return from_generators(ig, dim);
  }

  /// Cone {y : a·y >= 0 for every a in normals}.
  static RationalCone from_inequalities(const std::vector<IVec>& normals, std::size_t dim) {
    auto v = detail::double_description(normals, dim);
    std::vector<IVec> gens = v.rays;
    for (const auto& l : v.lineality) {
      gens.push_back(l);
      gens.push_back(neg(l));
    }
    return from_generators(gens, dim);
  }

  static RationalCone zero(std::size_t dim) { return from_generators(std::vector<IVec>{}, dim); }
  static RationalCone full(std::size_t dim) { return from_inequalities({}, dim); }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return dim_ - equations_.size(); }
  bool pointed() const { return lineality_.empty(); }
  bool full_dimensional() const { return equations_.empty(); }

  const std::vector<IVec>& extreme_rays() const { return rays_; }
  const std::vector<IVec>& lineality() const { return lineality_; }
  const std::vector<IVec>& equations() const { return equations_; }
  const std::vector<IVec>& facets() const { return facets_; }

  /// Irredundant generating set: extreme rays plus ± the lineality basis.
  std::vector<IVec> generators() const {
    std::vector<IVec> g = rays_;
    for (const auto& l : lineality_) {
      g.push_back(l);
      g.push_back(neg(l));
    }
    return g;
  }

  /// Generators of the dual cone: facet normals plus ± the equations.
  std::vector<IVec> facet_normals() const {
    std::vector<IVec> g = facets_;
    for (const auto& e : equations_) {
      g.push_back(e);
      g.push_back(neg(e));
    }
    return g;
  }

  bool contains(const IVec& v) const {
    check_dim(v.size());
    for (const auto& e : equations_)
      if (dot(e, v) != 0) return false;
    for (const auto& f : facets_)
      if (dot(f, v) < 0) return false;
    return true;
  }
  bool contains(const QVec& v) const { return contains(primitive(v)); }

  /// Strict interior relative to the ambient space.
  bool contains_in_interior(const IVec& v) const {
    check_dim(v.size());
    if (!equations_.empty()) return false;
    for (const auto& f : facets_)
      if (dot(f, v) <= 0) return false;
    return true;
  }

  bool contains(const RationalCone& o) const {
    check_dim(o.dim_);
    for (const auto& g : o.generators())
      if (!contains(g)) return false;
    return true;
  }

  /// Does the ray spanned by v equal one of the extreme rays of a pointed cone?
  bool is_extreme_ray(const IVec& v) const {
    if (!pointed()) return false;
    IVec p = primitive(v);
    return std::binary_search(rays_.begin(), rays_.end(), p);
  }

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.dim_ == b.dim_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_ &&
           a.equations_ == b.equations_ && a.facets_ == b.facets_;
  }
  friend bool operator!=(const RationalCone& a, const RationalCone& b) { return !(a == b); }

 private:
  void check_dim(std::size_t d) const {
    if (d != dim_) throw DimensionError("cone operation: ambient dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<IVec> lineality_, rays_, equations_, facets_;
};

inline RationalCone from_generators(const std::vector<IVec>& g, std::size_t dim) {
  return RationalCone::from_generators(g, dim);
}

inline RationalCone dual_cone(const RationalCone& c) {
  return RationalCone::from_generators(c.facet_normals(), c.ambient_dim());
}

inline RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient dimension mismatch");
  auto n = a.facet_normals();
  auto nb = b.facet_normals();
  n.insert(n.end(), nb.begin(), nb.end());
  return RationalCone::from_inequalities(n, a.ambient_dim());
}

inline RationalCone intersect_all(const std::vector<RationalCone>& cs, std::size_t dim) {
  std::vector<IVec> n;
  for (const auto& c : cs) {
    if (c.ambient_dim() != dim) throw DimensionError("intersect_all: ambient dimension mismatch");
    auto f = c.facet_normals();
    n.insert(n.end(), f.begin(), f.end());
  }
  return RationalCone::from_inequalities(n, dim);
}

/// Face of c cut out by the normals of c that vanish on every vector of `on`.
inline RationalCone face_vanishing_on(const RationalCone& c, const std::vector<IVec>& on) {
  std::vector<IVec> active;
  for (const auto& f : c.facets()) {
    bool vanish = std::all_of(on.begin(), on.end(), [&](const IVec& v) { return dot(f, v) == 0; });
    if (vanish) active.push_back(f);
  }
  std::vector<IVec> gens;
  for (const auto& r : c.extreme_rays()) {
    bool in = std::all_of(active.begin(), active.end(), [&](const IVec& f) { return dot(f, r) == 0; });
    if (in) gens.push_back(r);
  }
  for (const auto& l : c.lineality()) {
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  return RationalCone::from_generators(gens, c.ambient_dim());
}

/// Minimal face of c containing the cone `sub` (which must lie in c).
inline RationalCone minimal_face_containing(const RationalCone& c, const RationalCone& sub) {
  if (c.ambient_dim() != sub.ambient_dim())
    throw DimensionError("minimal_face_containing: ambient dimension mismatch");
  if (!c.contains(sub)) throw Error("minimal_face_containing: subcone not contained in cone");
  return face_vanishing_on(c, sub.generators());
}

/// All faces of dimension d, sorted canonically.
inline std::vector<RationalCone> faces_of_dim(const RationalCone& c, std::size_t d) {
  if (d > c.dim()) throw Error("faces_of_dim: requested dimension exceeds cone dimension");
  const std::size_t lin = c.lineality().size();
  if (d < lin) return {};
  // Faces are identified by their set of extreme rays; walk down the lattice.
  using RaySet = std::vector<std::size_t>;
  const auto& rays = c.extreme_rays();
  auto closure = [&](const RaySet& s) {
    std::vector<IVec> on;
    for (auto i : s) on.push_back(rays[i]);
    std::vector<const IVec*> active;
    for (const auto& f : c.facets())
      if (std::all_of(on.begin(), on.end(), [&](const IVec& v) { return dot(f, v) == 0; }))
        active.push_back(&f);
    RaySet out;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (std::all_of(active.begin(), active.end(), [&](const IVec* f) { return dot(*f, rays[i]) == 0; }))
        out.push_back(i);
    return out;
  };
  auto face_dim = [&](const RaySet& s) {
    std::vector<IVec> g = c.lineality();
    for (auto i : s) g.push_back(rays[i]);
    return rank(g, c.ambient_dim());
  };
  RaySet all(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all[i] = i;
  std::set<RaySet> level{all};
  std::size_t cur = c.dim();
  while (cur > d) {
    std::set<RaySet> next;
    for (const auto& s : level) {
      for (const auto& f : c.facets()) {
        RaySet sub;
        bool proper = false;
        for (auto i : s) {
          if (dot(f, rays[i]) == 0)
            sub.push_back(i);
          else
            proper = true;
        }
        if (!proper) continue;
        RaySet cl = closure(sub);
        if (face_dim(cl) == cur - 1) next.insert(cl);
      }
    }
    level = std::move(next);
    --cur;
  }
  std::vector<RationalCone> out;
  for (const auto& s : level) {
    std::vector<IVec> g;
    for (auto i : s) g.push_back(rays[i]);
    for (const auto& l : c.lineality()) {
      g.push_back(l);
      g.push_back(neg(l));
    }
    out.push_back(RationalCone::from_generators(g, c.ambient_dim()));
  }
  return out;
}

}  // namespace fano4::cones
