#pragma once

// The smooth complete toric variety of a fan: class group, divisor and curve
// classes, intersection numbers, Chern data, walls and the Fano test.

#include "fano4/arith.hpp"
#include "fano4/fan.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fano4::toric {

/// Coordinates of a class in N¹(X) relative to the canonical class-group basis.
struct DivisorClass {
  QVec coords;
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coords == b.coords; }
};

/// Coordinates of a class in N₁(X), dual to the DivisorClass coordinates.
struct CurveClass {
  QVec coords;
  friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.coords == b.coords; }
};

inline Rational pairing(const DivisorClass& d, const CurveClass& c) { return dot(d.coords, c.coords); }

/// Cl(X) ≅ Z^ρ. The basis is the Hermite basis of the lattice of linear
/// relations among the rays: a relation vector a (Σ a_i u_i = 0) is the class
/// of a curve C with D_i·C = a_i, and the divisor D_i has coordinates equal to
/// column i of `relations`. With these conventions the pairing matrix is the
/// identity.
struct ClassGroup {
  int rho = 0;
  int num_rays = 0;
  IntMatrix relations;           // rho × num_rays, rows = Hermite basis of relations
  IntMatrix curve_pairing;       // rho × rho identity
  Cone lift_base;                // maximal cone whose rays get coefficient 0 in lifts
  std::vector<int> lift_support; // the complementary rays

  const IntMatrix& divisor_class_map() const { return relations; }

  DivisorClass divisor_class(const QVec& d) const {
    if (static_cast<int>(d.size()) != num_rays) throw DimensionError("divisor_class: wrong length");
    QVec x(static_cast<std::size_t>(rho));
    for (int i = 0; i < rho; ++i)
      for (int j = 0; j < num_rays; ++j) x[static_cast<std::size_t>(i)] += relations(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * d[static_cast<std::size_t>(j)];
    return {x};
  }
  DivisorClass divisor_class(const IVec& d) const { return divisor_class(to_qvec(d)); }

  DivisorClass prime_divisor(int i) const {
    QVec d(static_cast<std::size_t>(num_rays));
    d[static_cast<std::size_t>(i)] = 1;
    return divisor_class(d);
  }

  /// A torus-invariant divisor (rational coefficients) representing the class.
  QVec lift(const DivisorClass& c) const {
    if (static_cast<int>(c.coords.size()) != rho) throw DimensionError("lift: wrong class dimension");
    IntMatrix A(static_cast<std::size_t>(rho), static_cast<std::size_t>(rho));
    for (int i = 0; i < rho; ++i)
      for (int k = 0; k < rho; ++k)
        A(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = relations(static_cast<std::size_t>(i), static_cast<std::size_t>(lift_support[static_cast<std::size_t>(k)]));
    auto y = solve_rational(A, c.coords);
    if (!y) throw Error("lift: class group basis is degenerate");
    QVec d(static_cast<std::size_t>(num_rays));
    for (int k = 0; k < rho; ++k) d[static_cast<std::size_t>(lift_support[static_cast<std::size_t>(k)])] = (*y)[static_cast<std::size_t>(k)];
    return d;
  }

  /// Curve class of a relation vector (D_i·C = a_i).
  CurveClass curve_from_relation(const IVec& a) const {
    std::vector<IVec> cols;
    for (int i = 0; i < rho; ++i) cols.push_back(relations.row(static_cast<std::size_t>(i)));
    auto c = solve_columns(cols, to_qvec(a));
    if (!c) throw Error("curve_from_relation: vector is not a linear relation among the rays");
    return {*c};
  }

  /// Relation vector (D_i·C)_i of a curve class.
  QVec relation_of(const CurveClass& c) const {
    QVec a(static_cast<std::size_t>(num_rays));
    for (int i = 0; i < rho; ++i)
      for (int j = 0; j < num_rays; ++j)
        a[static_cast<std::size_t>(j)] += c.coords[static_cast<std::size_t>(i)] * relations(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return a;
  }
};

inline ClassGroup class_group(const Fan& f) {
  require_valid(f);
  ClassGroup cg;
  cg.num_rays = f.num_rays();
  cg.rho = f.picard_number();
  auto K = integer_kernel(f.ray_matrix());
  if (static_cast<int>(K.size()) != cg.rho) throw FanError("class_group: rays do not span the lattice");
  cg.relations = IntMatrix::from_rows(K, static_cast<std::size_t>(cg.num_rays));
  cg.curve_pairing = IntMatrix::identity(static_cast<std::size_t>(cg.rho));
  cg.lift_base = f.max_cones.front();
  for (int i = 0; i < cg.num_rays; ++i)
    if (!std::binary_search(cg.lift_base.begin(), cg.lift_base.end(), i)) cg.lift_support.push_back(i);
  return cg;
}

/// A codimension-one cone shared by two maximal cones, with its wall relation
/// u_left + u_right + Σ a_i u_i = 0 and the curve class of the invariant curve.
struct Wall {
  Cone cone;           // the dim-1 shared rays
  int left = -1;       // completing ray of the first maximal cone
  int right = -1;      // completing ray of the second maximal cone
  IVec relation;       // coefficient per ray; 1 at left and right
  CurveClass curve;
  Integer degK;        // -K·C = Σ relation coefficients

  std::size_t index = 0;  // position in the wall list
};

/// All walls of a smooth complete fan, in lexicographic order of their cones.
inline std::vector<Wall> compute_walls(const Fan& f, const ClassGroup& cg) {
  std::map<Cone, std::vector<std::size_t>> owners;
  for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
    const auto& c = f.max_cones[k];
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Cone w;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != drop) w.push_back(c[i]);
      owners[w].push_back(k);
    }
  }
  std::vector<Wall> out;
  const auto n = static_cast<std::size_t>(f.dim);
  for (const auto& [w, own] : owners) {
    if (own.size() != 2) throw FanError("compute_walls: fan is not complete at wall " + cone_string(w));
    auto other = [&](std::size_t k) {
      for (int i : f.max_cones[k])
        if (!std::binary_search(w.begin(), w.end(), i)) return i;
      return -1;
    };
    Wall wall;
    wall.cone = w;
    wall.left = other(own[0]);
    wall.right = other(own[1]);
    std::vector<IVec> cols;
    for (int i : w) cols.push_back(f.rays[static_cast<std::size_t>(i)]);
    QVec rhs(n);
    for (std::size_t j = 0; j < n; ++j)
      rhs[j] = -(f.rays[static_cast<std::size_t>(wall.left)][j] + f.rays[static_cast<std::size_t>(wall.right)][j]);
    auto a = solve_columns(cols, rhs);
    if (!a) throw FanError("compute_walls: no relation across wall " + cone_string(w));
    wall.relation.assign(static_cast<std::size_t>(f.num_rays()), 0);
    wall.relation[static_cast<std::size_t>(wall.left)] = 1;
    wall.relation[static_cast<std::size_t>(wall.right)] = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((*a)[i].get_den() != 1) throw FanError("compute_walls: non-integral wall relation (fan not smooth)");
      wall.relation[static_cast<std::size_t>(w[i])] = (*a)[i].get_num();
    }
    wall.degK = 0;
    for (const auto& x : wall.relation) wall.degK += x;
    wall.curve = cg.curve_from_relation(wall.relation);
    wall.index = out.size();
    out.push_back(std::move(wall));
  }
  return out;
}

/// Exact intersection numbers of torus-invariant divisors on a smooth
/// complete toric variety, computed by linear-equivalence moves.
class IntersectionRing {
 public:
  explicit IntersectionRing(const Fan& f) : fan_(f) {
    require_valid(f);
    m_ = f.num_rays();
    n_ = f.dim;
    dual_basis_.resize(f.max_cones.size());
  }

  int num_rays() const { return m_; }

  /// D_{i_1}···D_{i_n} for an index multiset of size dim.
  Integer monomial(std::vector<int> idx) {
    if (static_cast<int>(idx.size()) != n_) throw DimensionError("monomial: need exactly dim factors");
    std::sort(idx.begin(), idx.end());
    auto it = memo_.find(idx);
    if (it != memo_.end()) return it->second;
    Integer v = compute(idx);
    memo_.emplace(idx, v);
    return v;
  }

  /// Intersection number of dim divisors given as coefficient vectors over the rays.
  Rational intersect(const std::vector<QVec>& ds) {
    if (static_cast<int>(ds.size()) != n_) throw DimensionError("intersect: need exactly dim divisors");
    for (const auto& d : ds)
      if (static_cast<int>(d.size()) != m_) throw DimensionError("intersect: divisor length mismatch");
    Rational total = 0;
    std::vector<int> idx(static_cast<std::size_t>(n_));
    recurse(ds, 0, Rational(1), idx, total);
    return total;
  }

 private:
  void recurse(const std::vector<QVec>& ds, int depth, const Rational& coeff, std::vector<int>& idx, Rational& total) {
    if (depth == n_) {
      Integer v = monomial(idx);
      if (v != 0) total += coeff * v;
      return;
    }
    for (int i = 0; i < m_; ++i) {
      const Rational& c = ds[static_cast<std::size_t>(depth)][static_cast<std::size_t>(i)];
      if (c == 0) continue;
      idx[static_cast<std::size_t>(depth)] = i;
      recurse(ds, depth + 1, coeff * c, idx, total);
    }
  }

  // Column j of the inverse of the ray matrix of maximal cone k: the dual
  // basis element m with <m, u_{c_j}> = δ.
  const std::vector<IVec>& dual_basis(std::size_t k) {
    auto& db = dual_basis_[k];
    if (!db.empty()) return db;
    const auto& c = fan_.max_cones[k];
    std::vector<IVec> cols;
    // Solve B m = e_j where rows of B are the cone rays.
    IntMatrix B(c.size(), static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int j = 0; j < n_; ++j) B(i, static_cast<std::size_t>(j)) = fan_.rays[static_cast<std::size_t>(c[i])][static_cast<std::size_t>(j)];
    for (std::size_t j = 0; j < c.size(); ++j) {
      QVec e(c.size());
      e[j] = 1;
      auto m = solve_rational(B, e);
      IVec mi(static_cast<std::size_t>(n_));
      for (int t = 0; t < n_; ++t) mi[static_cast<std::size_t>(t)] = (*m)[static_cast<std::size_t>(t)].get_num();
      db.push_back(std::move(mi));
    }
    return db;
  }

  Integer compute(const std::vector<int>& idx) {
    Cone distinct = idx;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::size_t host = fan_.max_cones.size();
    for (std::size_t k = 0; k < fan_.max_cones.size(); ++k) {
      const auto& c = fan_.max_cones[k];
      if (std::includes(c.begin(), c.end(), distinct.begin(), distinct.end())) {
        host = k;
        break;
      }
    }
    if (host == fan_.max_cones.size()) return 0;
    if (static_cast<int>(distinct.size()) == n_) return 1;
    int rep = -1;
    for (std::size_t t = 0; t + 1 < idx.size(); ++t)
      if (idx[t] == idx[t + 1]) {
        rep = idx[t];
        break;
      }
    const auto& c = fan_.max_cones[host];
    std::size_t pos = static_cast<std::size_t>(std::find(c.begin(), c.end(), rep) - c.begin());
    const IVec& m = dual_basis(host)[pos];
    // D_rep ~ -Σ_{k ∉ host} <m, u_k> D_k
    std::vector<int> rest = idx;
    rest.erase(std::find(rest.begin(), rest.end(), rep));
    Integer total = 0;
    for (int k = 0; k < m_; ++k) {
      if (std::binary_search(c.begin(), c.end(), k)) continue;
      Integer mk = dot(m, fan_.rays[static_cast<std::size_t>(k)]);
      if (mk == 0) continue;
      std::vector<int> next = rest;
      next.push_back(k);
      total -= mk * monomial(next);
    }
    return total;
  }

  Fan fan_;
  int m_ = 0, n_ = 0;
  std::map<std::vector<int>, Integer> memo_;
  std::vector<std::vector<IVec>> dual_basis_;
};

/// The toric variety of a validated smooth complete fan with cached derived data.
class ToricVariety {
 public:
  explicit ToricVariety(Fan f) : fan_(std::move(f)), cg_(class_group(fan_)) {
    ring_ = std::make_shared<IntersectionRing>(fan_);
  }

  const Fan& fan() const { return fan_; }
  const ClassGroup& classes() const { return cg_; }
  int dim() const { return fan_.dim; }
  int rho() const { return cg_.rho; }
  int num_rays() const { return fan_.num_rays(); }

  const std::vector<Wall>& walls() const {
    if (!walls_) walls_ = std::make_shared<std::vector<Wall>>(compute_walls(fan_, cg_));
    return *walls_;
  }

  /// −K_X as a divisor: the sum of all invariant prime divisors.
  QVec anticanonical_divisor() const { return QVec(static_cast<std::size_t>(num_rays()), Rational(1)); }
  DivisorClass anticanonical_class() const { return cg_.divisor_class(anticanonical_divisor()); }

  Rational intersect(const QVec& d1, const QVec& d2, const QVec& d3, const QVec& d4) const {
    require_dim4();
    return ring_->intersect({d1, d2, d3, d4});
  }
  Rational intersect(const DivisorClass& a, const DivisorClass& b, const DivisorClass& c,
                     const DivisorClass& d) const {
    return intersect(cg_.lift(a), cg_.lift(b), cg_.lift(c), cg_.lift(d));
  }
  /// Generic-dimension intersection of dim divisors.
  Rational intersect_n(const std::vector<QVec>& ds) const { return ring_->intersect(ds); }

  /// D²·c₂(X) = Σ over 2-dimensional cones {i,j} of D²·D_i·D_j.
  Rational c2_pairing(const QVec& d) const {
    require_dim4();
    Rational total = 0;
    const int m = num_rays();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        if (!fan_.is_cone({i, j})) continue;
        QVec di(static_cast<std::size_t>(m)), dj(static_cast<std::size_t>(m));
        di[static_cast<std::size_t>(i)] = 1;
        dj[static_cast<std::size_t>(j)] = 1;
        total += ring_->intersect({d, d, di, dj});
      }
    return total;
  }
  Rational c2_pairing(const DivisorClass& d) const { return c2_pairing(cg_.lift(d)); }

  /// (−K)^4.
  Rational degree() const {
    auto k = anticanonical_divisor();
    return intersect(k, k, k, k);
  }
  /// (−K)²·c₂.
  Rational c2K2() const { return c2_pairing(anticanonical_divisor()); }
  /// χ(X, −K_X) by Riemann–Roch with χ(O_X) = 1.
  Rational chi_anticanonical() const { return (2 * degree() + c2K2()) / 12 + 1; }

  /// Topological Euler number: the number of torus-fixed points.
  std::size_t euler_number() const { return fan_.max_cones.size(); }

  /// Toric Kleiman criterion: −K·C > 0 for every wall curve.
  bool is_fano() const {
    for (const auto& w : walls())
      if (w.degK <= 0) return false;
    return true;
  }

  void require_dim4() const {
    if (fan_.dim != 4) throw DimensionError("this operation is only available for 4-dimensional fans");
  }

 private:

  Fan fan_;
  ClassGroup cg_;
  std::shared_ptr<IntersectionRing> ring_;
  mutable std::shared_ptr<std::vector<Wall>> walls_;
};

}  // namespace fano4::toric
