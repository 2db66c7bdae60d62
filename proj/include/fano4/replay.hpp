#pragma once

// Scripted reconstructions of the worked examples with pass/fail checklists.

#include "fano4/birational.hpp"
#include "fano4/ledger.hpp"
#include "fano4/library.hpp"
#include "fano4/mori.hpp"
#include "fano4/toric.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace fano4::replay {

using birational::TypeLabel;

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string example;
  std::vector<CheckItem> items;
  bool ok() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
  }
};

namespace detail {

/// Runs a check; exceptions count as failures with the message as detail.
inline void check(Report& r, const std::string& name, const std::function<std::string(bool&)>& body) {
  CheckItem c{name, false, {}};
  try {
    c.detail = body(c.pass);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  r.items.push_back(std::move(c));
}

inline int ray_by_label(const Fan& f, const std::string& name) {
  for (const auto& [k, v] : f.labels)
    if (v == name) return k;
  throw Error("no ray labelled " + name);
}

}  // namespace detail

/// Ledger chain for r = 8 point blow-ups of P⁴ followed by the flips back to
/// a Fano model.
inline Report eight_points() {
  Report r{"eight_points", {}};
  auto steps = ledger::run_script(
      "start P4\n"
      "blowup point\nblowup point\nblowup point\nblowup point\n"
      "blowup point\nblowup point\nblowup point\nblowup point\n"
      "flip dir=s2f s=36\n");
  const auto& blown = steps[8].state;
  auto fano = steps.back().state;
  fano.fano_flag = true;  // asserted: the flipped model is Fano
  detail::check(r, "(-K)^4 after 8 point blow-ups = -23", [&](bool& ok) {
    ok = blown.degK4 == -23;
    return blown.to_string();
  });
  detail::check(r, "(-K)^4 after the flips = 13", [&](bool& ok) {
    ok = fano.degK4 == 13;
    return fano.to_string();
  });
  detail::check(r, "h0(-K) = 6", [&](bool& ok) {
    auto h0 = fano.h0_minusK();
    ok = h0 && *h0 == 6 && blown.chi_minusK == 6;
    return "chi=" + std::to_string(fano.chi_minusK);
  });
  detail::check(r, "rho = 9", [&](bool& ok) {
    ok = fano.rho == 9;
    return "rho=" + std::to_string(fano.rho);
  });
  return r;
}

/// The section divisor of the P¹-bundle over P¹×P² has two divisorial rays.
inline Report section_divisor() {
  Report r{"section_divisor", {}};
  Fan f = library::ambiguous_example();
  toric::ToricVariety X(f);
  const int s = detail::ray_by_label(f, "f+");
  detail::check(r, "smooth projective Fano, rho = 3", [&](bool& ok) {
    ok = validate(f).ok() && birational::is_projective(X) && X.is_fano() && X.rho() == 3;
    return "rho=" + std::to_string(X.rho());
  });
  detail::check(r, "section divisor is fixed", [&](bool& ok) {
    auto fx = mori::fixed_prime_divisors(X);
    ok = std::any_of(fx.begin(), fx.end(), [&](const mori::FixedDivisorReport& d) { return d.ray_index == s; });
    return std::to_string(fx.size()) + " fixed divisors";
  });
  detail::check(r, "two divisorial rays on the section: (3,1)^sm and (3,2)^sm", [&](bool& ok) {
    std::multiset<std::string> labels;
    for (const auto& R : birational::extremal_rays(X))
      if (R.contraction.kind == birational::ContractionKind::Divisorial && R.contraction.exc_rays.front() == s)
        labels.insert(birational::to_string(*R.contraction.type_label));
    ok = labels == std::multiset<std::string>{"(3,1)^sm", "(3,2)^sm"};
    std::string d;
    for (const auto& l : labels) d += l + " ";
    return d;
  });
  detail::check(r, "fixed-divisor type is ambiguous", [&](bool& ok) {
    mori::FixedDivisorReport rep;
    rep.ray_index = s;
    rep = mori::classify_fixed_divisor(X, rep);
    ok = rep.type_label == "ambiguous{(3,1)^sm,(3,2)^sm}";
    return rep.type_label;
  });
  return r;
}

/// Blow-up of a P²-bundle over P² along an invariant surface: the
/// exceptional divisor has a direct (3,2)^sm MMP and a flip-then-(3,0) MMP.
inline Report surface_blowup() {
  Report r{"surface_blowup", {}};
  Fan f = library::special_example();
  toric::ToricVariety X(f);
  const int e = detail::ray_by_label(f, "E");
  detail::check(r, "smooth projective Fano, rho = 3", [&](bool& ok) {
    ok = validate(f).ok() && birational::is_projective(X) && X.is_fano() && X.rho() == 3;
    return "rho=" + std::to_string(X.rho());
  });
  detail::check(r, "E is fixed", [&](bool& ok) {
    auto fx = mori::fixed_prime_divisors(X);
    ok = std::any_of(fx.begin(), fx.end(), [&](const mori::FixedDivisorReport& d) { return d.ray_index == e; });
    return std::to_string(fx.size()) + " fixed divisors";
  });
  auto all = mori::mmp_exhaustive(f, e);
  detail::check(r, "direct (3,2)^sm contraction of E", [&](bool& ok) {
    ok = std::any_of(all.begin(), all.end(), [](const mori::MmpResult& m) {
      return m.end == mori::MmpEnd::ContractedD && m.trace.steps.size() == 1 &&
             m.trace.steps[0].type_label == TypeLabel::T32sm;
    });
    return std::to_string(all.size()) + " MMPs";
  });
  detail::check(r, "flip then (3,0) contraction with E.C = -2", [&](bool& ok) {
    std::string d;
    for (const auto& m : all) {
      if (m.end != mori::MmpEnd::ContractedD || m.trace.steps.size() != 2) continue;
      const auto& s0 = m.trace.steps[0];
      const auto& s1 = m.trace.steps[1];
      if (s0.move != birational::MoveKind::Flip || s1.type_label != TypeLabel::T30other) continue;
      d = "E.C = " + to_string(m.terminal_ray->relation[static_cast<std::size_t>(e)]);
      ok = m.terminal_ray->relation[static_cast<std::size_t>(e)] == -2;
    }
    return d;
  });
  detail::check(r, "Mov(X) has at least 2 chambers", [&](bool& ok) {
    auto ch = mori::mori_chambers(X);
    ok = ch.chambers.size() >= 2;
    return std::to_string(ch.chambers.size()) + " chambers";
  });
  return r;
}

/// Bl_p P⁴, then the transform of a plane through p, then two fixed points,
/// then flips to a Fano model with ρ = 5.
inline Report two_point_tower() {
  Report r{"two_point_tower", {}};
  Fan y = library::plane_over_point();
  detail::check(r, "intermediate Y is Fano with rho = 3", [&](bool& ok) {
    toric::ToricVariety Y(y);
    ok = Y.is_fano() && Y.rho() == 3;
    return "rho=" + std::to_string(Y.rho());
  });
  auto sqm = library::two_point_sqm(y);
  detail::check(r, "a pair of fixed points leads to a Fano model by flips", [&](bool& ok) {
    ok = sqm.has_value();
    return ok ? "points " + cone_string(sqm->point_a) + " " + cone_string(sqm->point_b) : "no pair";
  });
  if (!sqm) return r;
  toric::ToricVariety X(sqm->fano);
  detail::check(r, "exactly 3 flips", [&](bool& ok) {
    ok = sqm->flips.trace.steps.size() == 3;
    return std::to_string(sqm->flips.trace.steps.size()) + " flips";
  });
  detail::check(r, "smooth Fano with rho = 5", [&](bool& ok) {
    ok = validate(sqm->fano).ok() && X.is_fano() && X.rho() == 5;
    return "rho=" + std::to_string(X.rho());
  });
  auto fx = mori::classify_all(X);
  detail::check(r, "6 fixed prime divisors", [&](bool& ok) {
    ok = fx.size() == 6;
    return std::to_string(fx.size());
  });
  detail::check(r, "exactly 2 of type (3,0)^sm, the point-exceptional divisors", [&](bool& ok) {
    std::set<int> sm;
    for (const auto& d : fx)
      if (d.type_label == "(3,0)^sm") sm.insert(d.ray_index);
    const int m = sqm->fano.num_rays();
    ok = sm == std::set<int>{m - 2, m - 1};
    return std::to_string(sm.size()) + " of type (3,0)^sm";
  });
  detail::check(r, "the flip path lies in the chamber graph", [&](bool& ok) {
    auto ch = mori::mori_chambers(X);
    std::vector<std::string> path{fan_hash(sqm->blown_up)};
    for (const auto& s : sqm->flips.trace.steps) path.push_back(fan_hash(s.after));
    auto idx = [&](const std::string& h) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < ch.chambers.size(); ++k)
        if (ch.chambers[k].hash == h) return k;
      return std::nullopt;
    };
    ok = true;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      auto a = idx(path[k]), b = idx(path[k + 1]);
      if (!a || !b) {
        ok = false;
        continue;
      }
      auto edge = std::make_pair(std::min(*a, *b), std::max(*a, *b));
      if (std::find(ch.edges.begin(), ch.edges.end(), edge) == ch.edges.end()) ok = false;
    }
    return std::to_string(ch.chambers.size()) + " chambers";
  });
  return r;
}

inline std::vector<std::string> names() { return {"surface_blowup", "section_divisor", "two_point_tower", "eight_points"}; }

inline Report run(const std::string& name) {
  if (name == "surface_blowup") return surface_blowup();
  if (name == "section_divisor") return section_divisor();
  if (name == "two_point_tower") return two_point_tower();
  if (name == "eight_points") return eight_points();
  throw Error("unknown example '" + name + "' (expected surface_blowup, section_divisor, two_point_tower or eight_points)");
}

}  // namespace fano4::replay
