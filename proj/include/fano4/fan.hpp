#pragma once

// Complete simplicial fans and their validation.

#include "fano4/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fano4 {

using Cone = std::vector<int>;  // sorted ray indices

class FanError : public Error {
 public:
  using Error::Error;
};

/// A fan: primitive ray generators plus maximal cones given as index sets.
/// Maximal cones are kept sorted (each cone ascending, list lexicographic).
struct Fan {
  int dim = 0;
  std::vector<IVec> rays;
  std::vector<Cone> max_cones;
  std::map<int, std::string> labels;

  int num_rays() const { return static_cast<int>(rays.size()); }
  int picard_number() const { return num_rays() - dim; }

  void normalize_cones() {
    for (auto& c : max_cones) std::sort(c.begin(), c.end());
    std::sort(max_cones.begin(), max_cones.end());
    max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());
  }

  bool has_max_cone(const Cone& c) const {
    return std::binary_search(max_cones.begin(), max_cones.end(), c);
  }

  /// Is the (sorted) index set a face of some maximal cone?
  bool is_cone(const Cone& s) const {
    for (const auto& c : max_cones)
      if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
    return false;
  }

  std::string label(int i) const {
    auto it = labels.find(i);
    return it == labels.end() ? "u" + std::to_string(i) : it->second;
  }

  /// Matrix whose rows are the ray generators.
  IntMatrix ray_matrix() const { return IntMatrix::from_rows(rays, static_cast<std::size_t>(dim)); }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim == b.dim && a.rays == b.rays && a.max_cones == b.max_cones;
  }
};

inline Cone make_cone(std::vector<int> c) {
  std::sort(c.begin(), c.end());
  return c;
}

inline std::string cone_string(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

/// Fan with rays sorted lexicographically and cones remapped; labels dropped.
/// Two fans describe the same variety (up to ray order) iff these agree.
inline Fan normalized(const Fan& f) {
  std::vector<int> order(f.rays.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return f.rays[a] < f.rays[b]; });
  std::vector<int> inv(order.size());
  Fan g;
  g.dim = f.dim;
  for (std::size_t k = 0; k < order.size(); ++k) {
    inv[order[k]] = static_cast<int>(k);
    g.rays.push_back(f.rays[order[k]]);
  }
  for (const auto& c : f.max_cones) {
    Cone d;
    for (int i : c) d.push_back(inv[i]);
    g.max_cones.push_back(make_cone(d));
  }
  g.normalize_cones();
  return g;
}

/// Stable 64-bit FNV-1a digest of the normalized fan, hex encoded.
inline std::string fan_hash(const Fan& f) {
  Fan g = normalized(f);
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  feed(std::to_string(g.dim));
  for (const auto& r : g.rays) feed(to_string_vec(r));
  for (const auto& c : g.max_cones) feed(cone_string(c));
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // empty on pass
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw Error("ValidationReport: no check named " + name);
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return c.name + ": " + c.witness;
    return {};
  }
};

namespace detail {

inline IntMatrix cone_matrix(const Fan& f, const Cone& c) {
  IntMatrix m(c.size(), static_cast<std::size_t>(f.dim));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j < f.dim; ++j) m(i, static_cast<std::size_t>(j)) = f.rays[static_cast<std::size_t>(c[i])][static_cast<std::size_t>(j)];
  return m;
}

/// Is v in the closed simplicial cone spanned by the rays of c (full-dimensional)?
inline bool in_simplicial_cone(const Fan& f, const Cone& c, const IVec& v) {
  std::vector<IVec> cols;
  for (int i : c) cols.push_back(f.rays[static_cast<std::size_t>(i)]);
  auto x = solve_columns(cols, to_qvec(v));
  if (!x) return false;
  return std::all_of(x->begin(), x->end(), [](const Rational& q) { return q >= 0; });
}

}  // namespace detail

/// Structural checks on a fan of simplicial cones: ray primitivity, smoothness
/// (unimodular maximal cones), face compatibility and completeness.
inline ValidationReport validate(const Fan& f) {
  ValidationReport rep;
  const auto n = static_cast<std::size_t>(f.dim);

  CheckResult structure{"structure", true, {}};
  if (f.dim < 1) {
    structure = {"structure", false, "dimension must be positive"};
  } else if (f.max_cones.empty()) {
    structure = {"structure", false, "no maximal cones"};
  } else {
    for (std::size_t i = 0; i < f.rays.size() && structure.pass; ++i)
      if (f.rays[i].size() != n)
        structure = {"structure", false, "ray " + std::to_string(i) + " has wrong length"};
    for (const auto& c : f.max_cones) {
      if (!structure.pass) break;
      std::set<int> s(c.begin(), c.end());
      if (c.size() != n || s.size() != n)
        structure = {"structure", false, "cone " + cone_string(c) + " is not a simplicial maximal cone"};
      for (int i : c)
        if (i < 0 || i >= f.num_rays())
          structure = {"structure", false, "cone " + cone_string(c) + " references a missing ray"};
    }
  }
  rep.checks.push_back(structure);
  if (!structure.pass) {
    for (const char* nm : {"primitivity", "smoothness", "compatibility", "completeness"})
      rep.checks.push_back({nm, false, "skipped: structure invalid"});
    return rep;
  }

  CheckResult prim{"primitivity", true, {}};
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    if (content(f.rays[i]) != 1) {
      prim = {"primitivity", false, "ray " + std::to_string(i) + " = " + to_string_vec(f.rays[i])};
      break;
    }
  }
  {
    std::set<IVec> seen;
    for (std::size_t i = 0; i < f.rays.size() && prim.pass; ++i)
      if (!seen.insert(f.rays[i]).second)
        prim = {"primitivity", false, "ray " + std::to_string(i) + " duplicated"};
  }
  rep.checks.push_back(prim);

  CheckResult smooth{"smoothness", true, {}};
  for (const auto& c : f.max_cones) {
    Integer d = determinant(detail::cone_matrix(f, c));
    if (abs(d) != 1) {
      smooth = {"smoothness", false, "cone " + cone_string(c) + " has |det| = " + to_string(Integer(abs(d)))};
      break;
    }
  }
  rep.checks.push_back(smooth);

  // Compatibility: each maximal cone is full-dimensional, each codimension-one
  // face lies in exactly two maximal cones, on opposite sides of its span.
  CheckResult compat{"compatibility", true, {}};
  std::map<Cone, std::vector<std::size_t>> facets;
  for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
    const auto& c = f.max_cones[k];
    if (determinant(detail::cone_matrix(f, c)) == 0) {
      compat = {"compatibility", false, "cone " + cone_string(c) + " is not full-dimensional"};
      break;
    }
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Cone w;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != drop) w.push_back(c[i]);
      facets[w].push_back(k);
    }
  }
  CheckResult complete{"completeness", true, {}};
  if (compat.pass) {
    for (const auto& [w, owners] : facets) {
      if (owners.size() == 1) {
        complete = {"completeness", false,
                    "wall " + cone_string(w) + " of cone " + cone_string(f.max_cones[owners[0]]) +
                        " has no neighbouring cone"};
        break;
      }
      if (owners.size() > 2) {
        compat = {"compatibility", false, "wall " + cone_string(w) + " lies in more than two maximal cones"};
        break;
      }
      // Opposite sides: the two completing rays lie strictly on opposite sides.
      std::vector<IVec> wr;
      for (int i : w) wr.push_back(f.rays[static_cast<std::size_t>(i)]);
      auto normal = orthogonal_complement(wr, n);
      if (normal.size() != 1) {
        compat = {"compatibility", false, "wall " + cone_string(w) + " is degenerate"};
        break;
      }
      auto other = [&](std::size_t k) {
        for (int i : f.max_cones[k])
          if (!std::binary_search(w.begin(), w.end(), i)) return i;
        return -1;
      };
      Integer s1 = dot(normal[0], f.rays[static_cast<std::size_t>(other(owners[0]))]);
      Integer s2 = dot(normal[0], f.rays[static_cast<std::size_t>(other(owners[1]))]);
      if (sgn(s1) * sgn(s2) >= 0) {
        compat = {"compatibility", false,
                  "cones " + cone_string(f.max_cones[owners[0]]) + " and " + cone_string(f.max_cones[owners[1]]) +
                      " overlap across wall " + cone_string(w)};
        break;
      }
    }
  }
  // Covering degree one: an interior point of the first cone lies in no other cone.
  if (compat.pass && complete.pass) {
    const auto& c0 = f.max_cones.front();
    IVec p(n);
    for (int i : c0)
      for (std::size_t j = 0; j < n; ++j) p[j] += f.rays[static_cast<std::size_t>(i)][j];
    for (std::size_t k = 1; k < f.max_cones.size(); ++k)
      if (detail::in_simplicial_cone(f, f.max_cones[k], p)) {
        compat = {"compatibility", false,
                  "cones " + cone_string(c0) + " and " + cone_string(f.max_cones[k]) + " overlap"};
        break;
      }
  }
  {
    std::vector<bool> used(f.rays.size(), false);
    for (const auto& c : f.max_cones)
      for (int i : c) used[static_cast<std::size_t>(i)] = true;
    for (std::size_t i = 0; i < used.size() && compat.pass; ++i)
      if (!used[i]) compat = {"compatibility", false, "ray " + std::to_string(i) + " lies in no maximal cone"};
  }
  rep.checks.push_back(compat);
  if (!compat.pass && complete.pass) complete = {"completeness", false, "skipped: compatibility failed"};
  rep.checks.push_back(complete);
  return rep;
}

/// Throws FanError naming the first failed invariant.
inline void require_valid(const Fan& f) {
  auto rep = validate(f);
  if (!rep.ok()) throw FanError("invalid fan: " + rep.first_failure());
}

}  // namespace fano4
