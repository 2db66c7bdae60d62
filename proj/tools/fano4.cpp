// fano4: command-line front end for the toric Fano 4-fold engine.
//
// Exit codes: 0 success, 1 replay assertion failure, 2 input error,
// 3 internal invariant violation.

#include "fano4/birational.hpp"
#include "fano4/fan.hpp"
#include "fano4/json_io.hpp"
#include "fano4/ledger.hpp"
#include "fano4/library.hpp"
#include "fano4/mori.hpp"
#include "fano4/replay.hpp"
#include "fano4/toric.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fano4;
using io::Json;

namespace {

struct InputError : Error {
  using Error::Error;
};

struct Options {
  bool json = false;
  bool exhaustive = false;
  std::size_t max_steps = 64;
  std::string out;
};

/// A builtin name or the path of a fan JSON file; the fan must validate.
Fan resolve(const std::string& source) {
  if (auto f = library::by_name(source)) return *f;
  if (!std::filesystem::exists(source)) {
    std::string names;
    for (const auto& nf : library::corpus()) names += " '" + nf.name + "'";
    throw InputError("'" + source + "' is neither a file nor a builtin fan; builtins:" + names);
  }
  Fan f = io::load_fan(source);
  auto rep = validate(f);
  if (!rep.ok()) throw InputError("invalid fan " + source + ": " + rep.first_failure());
  return f;
}

void emit_fan(const Options& o, const Fan& f) {
  if (o.out.empty()) return;
  std::ofstream out(o.out);
  if (!out) throw InputError("cannot write " + o.out);
  out << io::dump(io::fan_to_json(f));
}

/// Left-aligned text table.
void table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::cout << std::left << std::setw(static_cast<int>(w[i])) << r[i];
      if (i + 1 < r.size()) std::cout << "  ";
    }
    std::cout << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("bad index list '" + s + "'");
    }
  }
  return out;
}

int cmd_validate(const Options& o, const std::string& source) {
  Fan f;
  if (auto b = library::by_name(source))
    f = *b;
  else
    f = io::load_fan(source);
  auto rep = validate(f);
  if (o.json) {
    std::cout << io::dump(io::validation_json(rep));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : rep.checks) rows.push_back({c.name, c.pass ? "pass" : "FAIL", c.witness});
    table({"check", "result", "witness"}, rows);
  }
  return rep.ok() ? 0 : 2;
}

int cmd_info(const Options& o, const std::string& source) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  auto inv = birational::invariants(X);
  auto d = mori::lefschetz_defect(X);
  bool proj = birational::is_projective(X);
  if (o.json) {
    Json j;
    j["hash"] = fan_hash(f);
    j["rho"] = X.rho();
    j["projective"] = proj;
    j["fano"] = X.is_fano();
    j["chi"] = io::integer_json(inv.chi);
    j["degK4"] = io::integer_json(inv.degK4);
    j["c2K2"] = io::integer_json(inv.c2K2);
    j["euler"] = X.euler_number();
    j["delta"] = d.delta;
    j["delta_witness"] = f.label(d.witness);
    std::cout << io::dump(j);
  } else {
    table({"field", "value"}, {{"hash", fan_hash(f)},
                               {"rho", std::to_string(X.rho())},
                               {"projective", proj ? "yes" : "no"},
                               {"fano", X.is_fano() ? "yes" : "no"},
                               {"chi(-K)", to_string(inv.chi)},
                               {"(-K)^4", to_string(inv.degK4)},
                               {"(-K)^2.c2", to_string(inv.c2K2)},
                               {"euler", std::to_string(X.euler_number())},
                               {"delta", std::to_string(d.delta) + " (" + f.label(d.witness) + ")"}});
  }
  return 0;
}

int print_surgery(const Options& o, const std::string& move, const Fan& before, const Fan& after, const Json& data,
                  bool smooth = true) {
  emit_fan(o, after);
  Json rep = io::surgery_json(move, before, after, data, smooth);
  if (o.json) {
    std::cout << io::dump(rep);
  } else {
    std::vector<std::vector<std::string>> rows{{"move", move},
                                               {"input", fan_hash(before)},
                                               {"output", fan_hash(after)},
                                               {"data", data.dump()}};
    if (rep.contains("delta")) rows.push_back({"delta", rep["delta"].dump()});
    if (!smooth) rows.push_back({"output", "non-smooth target (validation waived)"});
    table({"field", "value"}, rows);
  }
  return 0;
}

int cmd_blowup(const Options& o, const std::string& source, const std::string& center) {
  Fan f = resolve(source);
  Cone c = make_cone(parse_indices(center));
  Fan g = birational::blowup(f, c);
  Json data;
  data["center"] = io::cone_json(c);
  return print_surgery(o, "blowup", f, g, data);
}

int cmd_contract(const Options& o, const std::string& source, int ray) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  for (const auto& R : birational::extremal_rays(X)) {
    if (R.contraction.kind != birational::ContractionKind::Divisorial || R.contraction.exc_rays.front() != ray) continue;
    Json data;
    data["ray"] = ray;
    data["relation"] = io::vector_json(R.relation);
    data["type"] = birational::to_string(*R.contraction.type_label);
    auto t = *R.contraction.type_label;
    if (t == birational::TypeLabel::T32sm || t == birational::TypeLabel::T31sm || t == birational::TypeLabel::T30sm)
      return print_surgery(o, "contraction", f, birational::contract(f, R), data);
    auto target = birational::contract_divisorial(f, R);
    return print_surgery(o, "contraction", f, target.fan, data, target.smooth);
  }
  // Not the exceptional divisor of an extremal ray: try a smooth blow-down.
  Fan g = birational::contract(f, ray);
  Json data;
  data["ray"] = ray;
  return print_surgery(o, "contraction", f, g, data);
}

int cmd_flip(const Options& o, const std::string& source, std::size_t wall) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  if (wall >= X.walls().size()) throw InputError("wall index out of range (" + std::to_string(X.walls().size()) + " walls)");
  for (const auto& R : birational::extremal_rays(X)) {
    if (std::find(R.walls.begin(), R.walls.end(), wall) == R.walls.end()) continue;
    Json data;
    data["wall"] = wall;
    data["relation"] = io::vector_json(R.relation);
    return print_surgery(o, "flip", f, birational::flip(X, R), data);
  }
  throw birational::SurgeryError("flip: wall " + std::to_string(wall) + " does not span an extremal ray");
}

int cmd_mmp(const Options& o, const std::string& source, int ray) {
  Fan f = resolve(source);
  if (ray < 0 || ray >= f.num_rays()) throw InputError("divisor index out of range");
  mori::MmpOptions opt;
  opt.max_steps = o.max_steps;
  std::vector<mori::MmpResult> runs;
  if (o.exhaustive)
    runs = mori::mmp_exhaustive(f, ray, opt);
  else
    runs.push_back(mori::mmp_for_divisor(f, ray, opt));
  if (o.json) {
    Json a = Json::array();
    for (const auto& r : runs) a.push_back(io::mmp_json(r));
    std::cout << io::dump(a);
    return 0;
  }
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& r = runs[k];
    std::cout << "mmp " << k + 1 << "/" << runs.size() << ": end=" << mori::to_string(r.end) << "\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
      const auto& s = r.trace.steps[i];
      rows.push_back({std::to_string(i + 1), birational::to_string(s.move),
                      s.type_label ? birational::to_string(*s.type_label) : "-", to_string_vec(s.relation),
                      to_string(s.divisor_degree)});
    }
    table({"step", "move", "type", "relation", "D.C"}, rows);
  }
  return 0;
}

int cmd_fixed(const Options& o, const std::string& source) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  mori::MmpOptions opt;
  opt.max_steps = o.max_steps;
  auto reps = mori::classify_all(X, opt);
  if (o.json) {
    std::cout << io::dump(io::fixed_json(f, reps));
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reps)
    rows.push_back({std::to_string(r.ray_index), f.label(r.ray_index), r.type_label,
                    r.C_D_relation ? to_string_vec(*r.C_D_relation) : "-",
                    r.pairing_D_CD ? to_string(*r.pairing_D_CD) : "-", r.degK_CD ? to_string(*r.degK_CD) : "-"});
  table({"ray", "label", "type", "C_D relation", "D.C_D", "-K.C_D"}, rows);
  return 0;
}

int cmd_chambers(const Options& o, const std::string& source) {
  Fan f = resolve(source);
  auto ch = mori::mori_chambers(toric::ToricVariety(f));
  if (o.json) {
    std::cout << io::dump(io::chambers_json(ch));
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < ch.chambers.size(); ++k) {
    std::string nb;
    for (const auto& [a, b] : ch.edges)
      if (a == k || b == k) nb += (nb.empty() ? "" : ",") + std::to_string(a == k ? b : a);
    rows.push_back({std::to_string(k), ch.chambers[k].hash, ch.chambers[k].smooth ? "yes" : "no", nb});
  }
  table({"chamber", "fan hash", "smooth", "adjacent"}, rows);
  return 0;
}

int cmd_cones(const Options& o, const std::string& source) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  auto s = mori::cone_suite(X);
  if (o.json) {
    std::cout << io::dump(io::cone_suite_json(X, s));
    return 0;
  }
  auto rays = [](const cones::RationalCone& c) {
    std::string r;
    for (const auto& v : c.extreme_rays()) r += to_string_vec(v) + " ";
    return r;
  };
  table({"cone", "extreme rays"}, {{"Nef", rays(s.nef)},
                                   {"Mov", rays(s.mov)},
                                   {"Eff", rays(s.eff)},
                                   {"NE", rays(s.ne)},
                                   {"mov", rays(s.mov_curves)}});
  return 0;
}

int cmd_delta(const Options& o, const std::string& source) {
  Fan f = resolve(source);
  toric::ToricVariety X(f);
  auto d = mori::lefschetz_defect(X);
  std::vector<mori::BoundClaim> claims;
  if (X.is_fano()) claims = mori::verify_bounds(X);
  bool ok = std::all_of(claims.begin(), claims.end(), [](const mori::BoundClaim& c) { return c.holds; });
  if (o.json) {
    Json j;
    j["delta"] = d.delta;
    j["witness"] = d.witness;
    Json a = Json::array();
    for (const auto& c : claims) {
      Json e;
      e["claim"] = c.claim;
      e["applicable"] = c.applicable;
      e["holds"] = c.holds;
      a.push_back(e);
    }
    j["bounds"] = a;
    std::cout << io::dump(j);
  } else {
    std::cout << "delta = " << d.delta << " (witness " << f.label(d.witness) << ")\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : claims)
      rows.push_back({c.claim, c.applicable ? "yes" : "no", c.holds ? "holds" : "VIOLATED"});
    if (!rows.empty()) table({"claim", "applicable", "result"}, rows);
  }
  return ok ? 0 : 3;
}

int cmd_ledger(const Options& o, const std::string& path) {
  auto steps = ledger::run_script(io::read_file(path));
  if (o.json) {
    std::cout << io::dump(io::ledger_json(steps));
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : steps)
    rows.push_back({s.move, std::to_string(s.state.chi_minusK), std::to_string(s.state.degK4),
                    std::to_string(s.state.c2K2), std::to_string(s.state.rho)});
  table({"move", "chi(-K)", "(-K)^4", "(-K)^2.c2", "rho"}, rows);
  return 0;
}

int cmd_replay(const Options& o, const std::string& name) {
  auto rep = replay::run(name);
  if (o.json) {
    Json j;
    j["example"] = rep.example;
    j["ok"] = rep.ok();
    Json a = Json::array();
    for (const auto& c : rep.items) {
      Json e;
      e["check"] = c.name;
      e["pass"] = c.pass;
      e["detail"] = c.detail;
      a.push_back(e);
    }
    j["checks"] = a;
    std::cout << io::dump(j);
  } else {
    for (const auto& c : rep.items)
      std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                << "\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toric Fano 4-fold engine"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable JSON output");
  app.add_flag("--exhaustive", o.exhaustive, "enumerate every MMP (mmp)");
  app.add_option("--max-steps", o.max_steps, "MMP step cap");
  app.add_option("--out", o.out, "write the resulting fan JSON here (surgeries)");

  std::string fan, center, arg;
  int ray = -1;
  std::size_t wall = 0;
  std::function<int()> run;
  auto fan_cmd = [&](const char* name, const char* help, std::function<int()> body) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("fan", fan, "builtin name or fan JSON path")->required();
    c->callback([&run, body] { run = body; });
    return c;
  };
  app.add_subcommand("validate", "validate a fan")
      ->callback([&] { run = [&] { return cmd_validate(o, fan); }; })
      ->add_option("fan", fan, "fan JSON path or builtin name")
      ->required();
  fan_cmd("info", "summary invariants", [&] { return cmd_info(o, fan); });
  fan_cmd("blowup", "star subdivision at a cone", [&] { return cmd_blowup(o, fan, center); })
      ->add_option("--center", center, "comma-separated ray indices")
      ->required();
  fan_cmd("contract", "divisorial contraction of a ray", [&] { return cmd_contract(o, fan, ray); })
      ->add_option("--ray", ray, "exceptional ray index")
      ->required();
  fan_cmd("flip", "flip the small extremal ray through a wall", [&] { return cmd_flip(o, fan, wall); })
      ->add_option("--wall", wall, "wall index")
      ->required();
  fan_cmd("mmp", "MMP for an invariant prime divisor", [&] { return cmd_mmp(o, fan, ray); })
      ->add_option("--divisor", ray, "ray index of the divisor")
      ->required();
  fan_cmd("fixed", "fixed prime divisors and their types", [&] { return cmd_fixed(o, fan); });
  fan_cmd("chambers", "Mori chamber decomposition of Mov", [&] { return cmd_chambers(o, fan); });
  fan_cmd("cones", "Nef, Mov, Eff, NE and mov", [&] { return cmd_cones(o, fan); });
  fan_cmd("delta", "Lefschetz defect and bound checks", [&] { return cmd_delta(o, fan); });
  app.add_subcommand("ledger", "run a ledger move script")
      ->callback([&] { run = [&] { return cmd_ledger(o, arg); }; })
      ->add_option("script", arg, "script path")
      ->required();
  app.add_subcommand("replay", "replay a worked example")
      ->callback([&] { run = [&] { return cmd_replay(o, arg); }; })
      ->add_option("example", arg, "surface_blowup | section_divisor | two_point_tower | eight_points")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ledger::LedgerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FanError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const birational::SurgeryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
