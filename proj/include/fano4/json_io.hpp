#pragma once

// Fan JSON ({"dim", "rays", "max_cones", "labels"}) and JSON reports.
// Requires nlohmann/json (json.hpp) on the include path.

#include "fano4/arith.hpp"
#include "fano4/birational.hpp"
#include "fano4/fan.hpp"
#include "fano4/ledger.hpp"
#include "fano4/mori.hpp"
#include "fano4/toric.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fano4::io {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  using Error::Error;
};

inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

inline Json rational_json(const Rational& q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return Json(q.get_str());
}

template <class Vec>
Json vector_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Integer>)
      a.push_back(integer_json(x));
    else
      a.push_back(rational_json(x));
  }
  return a;
}

inline Json cone_json(const Cone& c) {
  Json a = Json::array();
  for (int i : c) a.push_back(i);
  return a;
}

// ---------------------------------------------------------------------------
// Fans.

inline Json fan_to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim;
  Json rays = Json::array();
  for (const auto& r : f.rays) rays.push_back(vector_json(r));
  j["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : f.max_cones) cones.push_back(cone_json(c));
  j["max_cones"] = cones;
  if (!f.labels.empty()) {
    Json l = Json::object();
    for (const auto& [k, v] : f.labels) l[std::to_string(k)] = v;
    j["labels"] = l;
  }
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Fan fan_from_json(const Json& j) {
  auto fail = [](const std::string& field, const std::string& msg) -> void {
    throw ParseError("fan JSON: field '" + field + "': " + msg);
  };
  if (!j.is_object()) throw ParseError("fan JSON: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "dim" && it.key() != "rays" && it.key() != "max_cones" && it.key() != "labels")
      fail(it.key(), "unknown field");
  Fan f;
  if (!j.contains("dim") || !j["dim"].is_number_integer()) fail("dim", "missing or not an integer");
  f.dim = j["dim"].get<int>();
  if (f.dim < 1) fail("dim", "must be positive");
  if (!j.contains("rays") || !j["rays"].is_array()) fail("rays", "missing or not an array");
  for (std::size_t i = 0; i < j["rays"].size(); ++i) {
    const auto& r = j["rays"][i];
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (!r.is_array() || r.size() != static_cast<std::size_t>(f.dim))
      fail(where, "must be an array of " + std::to_string(f.dim) + " integers");
    IVec v;
    for (const auto& x : r) {
      if (!x.is_number_integer()) fail(where, "entries must be integers");
      v.push_back(Integer(static_cast<long>(x.get<std::int64_t>())));
    }
    f.rays.push_back(v);
  }
  if (!j.contains("max_cones") || !j["max_cones"].is_array()) fail("max_cones", "missing or not an array");
  for (std::size_t i = 0; i < j["max_cones"].size(); ++i) {
    const auto& c = j["max_cones"][i];
    const std::string where = "max_cones[" + std::to_string(i) + "]";
    if (!c.is_array()) fail(where, "must be an array of ray indices");
    Cone k;
    for (const auto& x : c) {
      if (!x.is_number_integer()) fail(where, "indices must be integers");
      int idx = x.get<int>();
      if (idx < 0 || idx >= f.num_rays()) fail(where, "index " + std::to_string(idx) + " out of range");
      k.push_back(idx);
    }
    f.max_cones.push_back(make_cone(k));
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) fail("labels", "must be an object mapping ray index to name");
    for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it) {
      int k = -1;
      try {
        std::size_t used = 0;
        k = std::stoi(it.key(), &used);
        if (used != it.key().size()) k = -1;
      } catch (const std::logic_error&) {
      }
      if (k < 0 || k >= f.num_rays()) fail("labels", "key '" + it.key() + "' is not a ray index");
      if (!it.value().is_string()) fail("labels", "value for '" + it.key() + "' must be a string");
      f.labels[k] = it.value().get<std::string>();
    }
  }
  f.normalize_cones();
  return f;
}

/// Parses text, reporting JSON syntax errors with line and column.
inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

inline Fan fan_from_string(const std::string& text) { return fan_from_json(parse_text(text)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Fan load_fan(const std::string& path) { return fan_from_string(read_file(path)); }

// ---------------------------------------------------------------------------
// Reports.

inline Json validation_json(const ValidationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["check"] = c.name;
    e["pass"] = c.pass;
    if (!c.pass) e["witness"] = c.witness;
    checks.push_back(e);
  }
  Json j;
  j["ok"] = rep.ok();
  j["checks"] = checks;
  return j;
}

inline Json invariants_json(const birational::Invariants& inv) {
  Json j;
  j["chi"] = integer_json(inv.chi);
  j["degK4"] = integer_json(inv.degK4);
  j["c2K2"] = integer_json(inv.c2K2);
  j["rho"] = inv.rho;
  return j;
}

inline Json cone_report_json(const cones::RationalCone& c) {
  Json j;
  Json r = Json::array(), n = Json::array(), l = Json::array(), e = Json::array();
  for (const auto& v : c.extreme_rays()) r.push_back(vector_json(v));
  for (const auto& v : c.lineality()) l.push_back(vector_json(v));
  for (const auto& v : c.facets()) n.push_back(vector_json(v));
  for (const auto& v : c.equations()) e.push_back(vector_json(v));
  j["rays"] = r;
  j["lineality"] = l;
  j["facets"] = n;
  j["equations"] = e;
  return j;
}

inline Json basis_json(const toric::ClassGroup& cg) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < cg.relations.rows(); ++i) rows.push_back(vector_json(cg.relations.row(i)));
  return rows;
}

inline Json cone_suite_json(const toric::ToricVariety& X, const mori::ConeSuite& s) {
  Json j;
  j["rho"] = X.rho();
  j["basis"] = basis_json(X.classes());
  j["nef"] = cone_report_json(s.nef);
  j["mov"] = cone_report_json(s.mov);
  j["eff"] = cone_report_json(s.eff);
  j["ne"] = cone_report_json(s.ne);
  j["mov_curves"] = cone_report_json(s.mov_curves);
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    Json e;
    e["check"] = c.name;
    e["pass"] = c.pass;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

inline Json step_json(const birational::TraceStep& s) {
  Json j;
  j["move"] = birational::to_string(s.move);
  j["detail"] = s.detail;
  if (!s.relation.empty()) j["relation"] = vector_json(s.relation);
  if (!s.center.empty()) j["center"] = cone_json(s.center);
  if (s.type_label) j["type"] = birational::to_string(*s.type_label);
  j["divisor_degree"] = rational_json(s.divisor_degree);
  j["input_hash"] = fan_hash(s.before);
  j["output_hash"] = fan_hash(s.after);
  j["output_smooth"] = s.after_smooth;
  if (s.ledger_before) j["ledger_before"] = invariants_json(*s.ledger_before);
  if (s.ledger_after) j["ledger_after"] = invariants_json(*s.ledger_after);
  return j;
}

inline Json mmp_json(const mori::MmpResult& r) {
  Json j;
  Json steps = Json::array();
  for (const auto& s : r.trace.steps) steps.push_back(step_json(s));
  j["steps"] = steps;
  j["end"] = mori::to_string(r.end);
  if (r.terminal_ray) j["terminal_relation"] = vector_json(r.terminal_ray->relation);
  Json m = Json::array();
  for (const auto& x : r.measures) m.push_back(rational_json(x));
  j["negative_wall_measure"] = m;
  Json p = Json::array();
  for (const auto& [rho, sep] : r.progress) p.push_back(Json::array({rho, sep}));
  j["progress"] = p;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json fixed_json(const Fan& f, const std::vector<mori::FixedDivisorReport>& reps) {
  Json a = Json::array();
  for (const auto& r : reps) {
    Json e;
    e["ray"] = r.ray_index;
    e["label"] = f.label(r.ray_index);
    e["class"] = vector_json(r.cls.coords);
    e["type"] = r.type_label;
    Json obs = Json::array();
    for (const auto& o : r.observed) obs.push_back(o);
    e["observed"] = obs;
    if (r.C_D_relation) e["C_D_relation"] = vector_json(*r.C_D_relation);
    if (r.C_D_class) e["C_D_class"] = vector_json(r.C_D_class->coords);
    if (r.pairing_D_CD) e["D.C_D"] = rational_json(*r.pairing_D_CD);
    if (r.degK_CD) e["-K.C_D"] = integer_json(*r.degK_CD);
    a.push_back(e);
  }
  return a;
}

inline Json chambers_json(const mori::ChamberFan& ch) {
  Json j;
  Json nodes = Json::array();
  for (const auto& c : ch.chambers) {
    Json e;
    e["hash"] = c.hash;
    e["smooth"] = c.smooth;
    e["rays"] = Json::array();
    for (const auto& r : c.cone.extreme_rays()) e["rays"].push_back(vector_json(r));
    nodes.push_back(e);
  }
  Json edges = Json::array();
  for (const auto& [a, b] : ch.edges) edges.push_back(Json::array({ch.chambers[a].hash, ch.chambers[b].hash}));
  j["count"] = ch.chambers.size();
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j;
}

inline Json ledger_state_json(const ledger::LedgerState& s) {
  Json j;
  j["chi"] = s.chi_minusK;
  j["degK4"] = s.degK4;
  j["c2K2"] = s.c2K2;
  j["rho"] = s.rho;
  j["fano_flag"] = s.fano_flag;
  return j;
}

inline Json ledger_json(const std::vector<ledger::ScriptStep>& steps) {
  Json a = Json::array();
  for (const auto& s : steps) {
    Json e;
    e["move"] = s.move;
    e["state"] = ledger_state_json(s.state);
    a.push_back(e);
  }
  return a;
}

/// {move, input_hash, output_hash, center/relation, ledger deltas}.
inline Json surgery_json(const std::string& move, const Fan& before, const Fan& after, const Json& data,
                         bool after_smooth = true) {
  Json j;
  j["move"] = move;
  j["input_hash"] = fan_hash(before);
  j["output_hash"] = fan_hash(after);
  j["data"] = data;
  auto in = birational::invariants(toric::ToricVariety(before));
  j["ledger_before"] = invariants_json(in);
  if (after_smooth && after.dim == 4) {
    auto out = birational::invariants(toric::ToricVariety(after));
    j["ledger_after"] = invariants_json(out);
    Json d;
    d["chi"] = integer_json(out.chi - in.chi);
    d["degK4"] = integer_json(out.degK4 - in.degK4);
    d["c2K2"] = integer_json(out.c2K2 - in.c2K2);
    d["rho"] = out.rho - in.rho;
    j["delta"] = d;
  } else {
    j["output_smooth"] = false;
  }
  j["output_fan"] = fan_to_json(after);
  return j;
}

}  // namespace fano4::io
