// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver. Every invocation prints one JSON report; the exit
// status is 0 on verified success, 1 on a verified negative answer and 2
// on errors.

#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "predim/dsl.hpp"
#include "predim/report.hpp"

namespace predim::cli {

using report::Json;

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::vector<std::string> inputs;
  std::string set, against, params, target, point, relative, over;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> window;
  std::size_t subset_bound = kDefaultSubsetBound;
  std::string json_out;
  std::size_t jobs = 1;
  std::size_t rounds = 4, samples = 4;
  std::size_t k = 2, len = 2, len_i = 2, len_j = 2;
};

struct Outcome {
  Json result;
  Json certificates = Json::object();
  std::vector<std::string> notes;
  int status = 0;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"delta",  "closure",      "dim",     "check-class", "decompose",
                                             "classify", "amalgamate", "build",   "check-axioms", "type-eq",
                                             "audit",  "scenario"};
  return c;
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string base_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

// Errors inside a file are reported with the file name.
template <class F>
auto in_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    std::string msg = base_name(path) + ": " + e.what();
    if (e.position()) throw Error(e.kind(), msg, *e.position(), e.witness());
    throw Error(e.kind(), msg, e.witness());
  }
}

class Driver {
 public:
  explicit Driver(Options o) : o_(std::move(o)) {}

  Json run(int& status) {
    Json doc;
    doc["command"] = o_.command;
    doc["inputs"] = inputs_json();
    try {
      Outcome out = dispatch();
      doc["result"] = out.result;
      doc["certificates"] = out.certificates;
      doc["notes"] = out.notes;
      status = out.status;
    } catch (const Error& e) {
      doc["result"] = nullptr;
      doc["certificates"] = Json::object();
      doc["notes"] = Json::array();
      doc["error"] = report::error(e);
      status = negative(e.kind()) ? 1 : 2;
    } catch (const std::exception& e) {
      doc["result"] = nullptr;
      doc["certificates"] = Json::object();
      doc["notes"] = Json::array();
      doc["error"] = {{"kind", "Internal"}, {"message", e.what()}, {"witness", Json::array()}};
      status = 2;
    }
    doc["seed"] = seed_;
    doc["version"] = report::kVersion;
    doc["timestamp"] = timestamp();
    return doc;
  }

 private:
  static bool negative(ErrorKind k) {
    return k == ErrorKind::NotInClass || k == ErrorKind::NotClosed || k == ErrorKind::NotMinimal;
  }

  static std::string timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  Json inputs_json() const {
    Json j;
    std::vector<std::string> files;
    for (const auto& f : o_.inputs) files.push_back(base_name(f));
    for (const auto& f : o_.files) files.push_back(o_.command == "scenario" ? f : base_name(f));
    j["files"] = files;
    if (!o_.over.empty()) j["over"] = base_name(o_.over);
    if (!o_.set.empty()) j["set"] = split_names(o_.set);
    if (!o_.target.empty()) j["target"] = split_names(o_.target);
    if (!o_.against.empty()) j["against"] = split_names(o_.against);
    if (!o_.params.empty()) j["params"] = split_names(o_.params);
    if (!o_.relative.empty()) j["relative"] = split_names(o_.relative);
    if (!o_.point.empty()) j["point"] = o_.point;
    if (o_.window) j["window"] = *o_.window;
    j["subset_bound"] = o_.subset_bound;
    return j;
  }

  Limits limits() const { return Limits{o_.subset_bound}; }

  std::vector<std::string> all_inputs() const {
    std::vector<std::string> v = o_.inputs;
    v.insert(v.end(), o_.files.begin(), o_.files.end());
    return v;
  }

  std::string primary() const {
    auto v = all_inputs();
    if (v.empty()) throw Error(ErrorKind::UsageError, "command '" + o_.command + "' needs an input manifest");
    return v.front();
  }

  dsl::Manifest manifest(const std::string& path) {
    return in_file(path, [&] {
      auto m = dsl::parse_manifest(read_file(path));
      if (!o_.seed && !seed_set_) {
        if (auto s = m.option("seed")) {
          try {
            seed_ = std::stoull(*s);
          } catch (const std::exception&) {
            throw Error(ErrorKind::UsageError, "option seed must be a non-negative integer");
          }
        }
        seed_set_ = true;
      }
      return m;
    });
  }

  ColouredStructure structure(const std::string& path) {
    auto m = manifest(path);
    return in_file(path, [&] { return dsl::build_structure(m, kDefaultPrecisionBudget, seed_); });
  }

  PointSet names_or(const ColouredStructure& m, const std::string& text, PointSet fallback) {
    if (text.empty()) return fallback;
    return m.set(split_names(text));
  }

  Outcome dispatch() {
    seed_ = o_.seed.value_or(0);
    seed_set_ = o_.seed.has_value();
    const auto& c = o_.command;
    if (c == "delta") return delta_cmd();
    if (c == "closure") return closure_cmd();
    if (c == "dim") return dim_cmd();
    if (c == "check-class") return check_class_cmd();
    if (c == "decompose") return decompose_cmd();
    if (c == "classify") return classify_cmd();
    if (c == "amalgamate") return amalgamate_cmd();
    if (c == "build") return build_cmd();
    if (c == "check-axioms") return check_axioms_cmd();
    if (c == "type-eq") return type_eq_cmd();
    if (c == "audit") return audit_cmd();
    if (c == "scenario") return scenario_cmd();
    throw Error(ErrorKind::UsageError, "unknown command '" + c + "'");
  }

  Outcome delta_cmd() {
    auto m = structure(primary());
    PointSet a = names_or(m, o_.set, m.all());
    Outcome out;
    if (!o_.relative.empty()) {
      PointSet c = m.set(split_names(o_.relative));
      out.result = {{"set", m.names(a)}, {"relative", m.names(c)}, {"delta_rel", delta_rel(m, c, a)}};
      return out;
    }
    out.result = {{"set", m.names(a)},
                  {"trdeg", m.trdeg(a)},
                  {"coloured", cardinality(a & m.colours())},
                  {"delta", delta(m, a)}};
    return out;
  }

  Outcome closure_cmd() {
    auto m = structure(primary());
    PointSet a = names_or(m, o_.set, 0);
    PointSet cl = closure(m, a, limits());
    Outcome out;
    out.result = {{"set", m.names(a)}, {"closure", m.names(cl)}, {"set_closed", cl == a}};
    Limits wide{std::max(o_.subset_bound, m.size())};
    out.certificates = {{"closure_closed", is_closed(m, cl, m.all(), wide)}, {"delta_closure", delta(m, cl)}};
    return out;
  }

  Outcome dim_cmd() {
    auto m = structure(primary());
    PointSet a = names_or(m, o_.set, 0);
    Outcome out;
    out.result = {{"set", m.names(a)}, {"dim", dim(m, a, limits())}, {"closure", m.names(closure(m, a, limits()))}};
    if (!o_.point.empty()) out.result["in_CL"] = in_CL(m, m.index(o_.point), a, limits());
    return out;
  }

  Json class_entry(const ColouredStructure& m) {
    auto v = check_class_membership(m, limits());
    return {{"ok", v.ok}, {"violation", m.names(v.violation)}, {"delta_violation", v.ok ? 0 : delta(m, v.violation)}};
  }

  Outcome check_class_cmd() {
    auto files = all_inputs();
    if (files.empty()) throw Error(ErrorKind::UsageError, "check-class needs an input manifest");
    Outcome out;
    if (files.size() == 1) {
      auto m = structure(files[0]);
      out.result = class_entry(m);
      out.status = out.result["ok"].get<bool>() ? 0 : 1;
      return out;
    }
    // Batch mode: independent fixtures, verified concurrently.
    std::vector<ColouredStructure> ms;
    for (const auto& f : files) ms.push_back(structure(f));
    std::vector<Json> entries(ms.size());
    const std::size_t jobs = std::max<std::size_t>(1, o_.jobs);
    for (std::size_t start = 0; start < ms.size(); start += jobs) {
      std::vector<std::future<Json>> fut;
      for (std::size_t i = start; i < std::min(ms.size(), start + jobs); ++i)
        fut.push_back(std::async(std::launch::async, [&, i] { return class_entry(ms[i]); }));
      for (std::size_t i = 0; i < fut.size(); ++i) entries[start + i] = fut[i].get();
    }
    Json list = Json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < files.size(); ++i) {
      Json e = {{"file", base_name(files[i])}};
      for (auto& [k, v] : entries[i].items()) e[k] = v;
      all_ok = all_ok && entries[i]["ok"].get<bool>();
      list.push_back(e);
    }
    out.result = {{"ok", all_ok}, {"fixtures", list}};
    out.status = all_ok ? 0 : 1;
    return out;
  }

  Outcome decompose_cmd() {
    auto m = structure(primary());
    PointSet a = names_or(m, o_.set, 0);
    PointSet b = names_or(m, o_.target, m.all());
    auto ch = decompose(m, a, b, limits());
    Outcome out;
    out.result = report::chain(m, ch);
    Json prefixes = Json::array();
    PointSet c = a;
    Limits wide{std::max(o_.subset_bound, m.size())};
    for (const auto& s : ch.steps) {
      c |= singleton(m.index(s.point));
      prefixes.push_back(is_closed(m, c, b, wide));
    }
    out.certificates = {{"prefixes_closed", prefixes}, {"reaches_target", c == b}};
    return out;
  }

  Outcome classify_cmd() {
    auto m = structure(primary());
    PointSet a = names_or(m, o_.set, 0);
    PointSet b = names_or(m, o_.target, m.all());
    auto kind = classify_minimal(m, a, b, limits());
    Outcome out;
    out.result = {{"base", m.names(a)},
                  {"target", m.names(b)},
                  {"kind", std::string(to_string(kind))},
                  {"delta", delta_rel(m, b, a)}};
    return out;
  }

  Outcome amalgamate_cmd() {
    if (o_.files.size() != 2 || o_.over.empty())
      throw Error(ErrorKind::UsageError, "usage: amalgamate <left> <right> --over <base>");
    auto base = structure(o_.over);
    auto left = structure(o_.files[0]);
    auto right = structure(o_.files[1]);
    auto am = free_amalgam(base, left, right, {}, {}, limits());
    Outcome out;
    out.result = report::amalgam(am);
    out.certificates = report::amalgam_certificates(am.certificates);
    out.notes = am.certificates.notes;
    return out;
  }

  // Runs the manifest's tasks; scenario tasks are reported, not applied.
  GenericModelState build_state(const std::string& path, Json* scenarios, bool require_class_first = true) {
    auto mf = manifest(path);
    ColouredStructure start = in_file(path, [&] { return dsl::build_structure(mf, kDefaultPrecisionBudget, seed_); });
    GenericModelState state;
    state.current = start;
    state.rng_seed = seed_;
    if (require_class_first) {
      state = initial_state(start, seed_, limits());
    } else if (!in_class(start)) {
      return state;
    }
    for (const auto& t : mf.tasks()) {
      in_file(path, [&] {
        dsl::at_position(t.pos, [&] {
          if (t.kind == "densify") {
            state = insert_density_witnesses(state, t.alpha, t.beta, t.count, t.coloured, limits());
          } else if (t.kind == "realize") {
            std::vector<Point> pts;
            for (const auto& n : t.over) pts.push_back(state.current.point(state.current.index(n)));
            auto tower = dsl::apply_declarations(state.current.tower(), t.body, pts, seed_);
            state = realize_extension(state, t.over, ColouredStructure(tower, std::move(pts)), limits());
          } else if (scenarios) {
            scenarios->push_back(run_scenario(t.scenario, params_of(t)));
          }
          return 0;
        });
        return 0;
      });
    }
    return state;
  }

  static std::map<std::string, std::size_t> params_of(const dsl::TaskDecl& t) {
    std::map<std::string, std::size_t> p;
    for (const auto& [k, v] : t.params) p[k] = static_cast<std::size_t>(v);
    return p;
  }

  Outcome build_cmd() {
    Json scenarios = Json::array();
    auto state = build_state(primary(), &scenarios);
    Outcome out;
    bool images = true, monotone = true;
    for (const auto& h : state.history) {
      images = images && h.image_closed;
      monotone = monotone && h.previous_closed;
    }
    bool cls = in_class(state.current);
    out.result = {{"stages", report::history(state)}, {"structure", report::structure(state.current)}};
    if (!scenarios.empty()) out.result["scenarios"] = scenarios;
    out.certificates = {{"images_closed", images}, {"stages_closed_in_next", monotone}, {"final_in_class", cls}};
    bool scen_ok = true;
    for (const auto& s : scenarios) scen_ok = scen_ok && s["passed"].get<bool>();
    out.status = images && monotone && cls && scen_ok ? 0 : 1;
    return out;
  }

  Outcome check_axioms_cmd() {
    auto state = build_state(primary(), nullptr, false);
    auto rep = check_axioms(state, o_.subset_bound, o_.samples);
    Outcome out;
    out.result = report::axioms(rep);
    out.notes = rep.notes;
    out.notes.push_back("witnesses in an elementary extension are approximated by later builder stages");
    out.status = rep.class_ok ? 0 : 1;
    return out;
  }

  Outcome type_eq_cmd() {
    auto m = structure(primary());
    if (o_.set.empty() || o_.against.empty())
      throw Error(ErrorKind::UsageError, "usage: type-eq --input <file> --set <tuple> --against <tuple>");
    TypeOptions opt;
    opt.params = split_names(o_.params);
    opt.limits = limits();
    require_class(m, limits());
    auto v = types_equal(m, split_names(o_.set), split_names(o_.against), opt);
    Outcome out;
    out.result = report::type_verdict(v);
    out.status = v.equal ? 0 : 1;
    return out;
  }

  Outcome audit_cmd() {
    if (o_.files.size() != 2) throw Error(ErrorKind::UsageError, "usage: audit <left> <right> [--rounds N]");
    auto a = build_state(o_.files[0], nullptr);
    auto b = build_state(o_.files[1], nullptr);
    auto rep = back_and_forth_audit(a, b, o_.rounds, limits());
    Outcome out;
    out.result = report::audit(rep);
    out.notes.push_back("points are paired by name; missing counterparts are realized on the other side");
    out.status = rep.passed ? 0 : 1;
    return out;
  }

  Json run_scenario(const std::string& name, const std::map<std::string, std::size_t>& p) {
    auto get = [&](const char* key, std::size_t fallback) {
      auto it = p.find(key);
      return it == p.end() ? fallback : it->second;
    };
    std::size_t window = get("window", o_.window.value_or(3));
    std::uint64_t seed = p.count("seed") ? p.at("seed") : seed_;
    if (name == "dp-rank") {
      auto sc = build_dprank_witness(get("k", o_.k), get("len", o_.len), window, seed, limits());
      auto j = report::scenario(sc);
      j["notes"] = sc.notes;
      return j;
    }
    if (name == "non-distal") {
      auto sc = build_nondistal_witness(get("len-i", o_.len_i), get("len-j", o_.len_j), window, seed, limits());
      auto j = report::scenario(sc);
      j["notes"] = sc.notes;
      return j;
    }
    throw Error(ErrorKind::UsageError, "unknown scenario '" + name + "' (dp-rank or non-distal)");
  }

  Outcome scenario_cmd() {
    if (o_.files.size() != 1) throw Error(ErrorKind::UsageError, "usage: scenario <dp-rank|non-distal> [flags]");
    Json j = run_scenario(o_.files[0], {});
    Outcome out;
    for (const auto& n : j["notes"]) out.notes.push_back(n.get<std::string>());
    j.erase("notes");
    out.certificates = {{"class_ok", j["class_ok"]}, {"passed", j["passed"]}};
    out.status = j["passed"].get<bool>() ? 0 : 1;
    out.result = std::move(j);
    return out;
  }

  Options o_;
  std::uint64_t seed_ = 0;
  bool seed_set_ = false;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predimension workbench: closures, amalgams, generic builds and witness scenarios"};
  Options o;
  std::uint64_t seed = 0;
  std::size_t window = 0;
  app.add_option("command", o.command, "one of: delta closure dim check-class decompose classify amalgamate build "
                                       "check-axioms type-eq audit scenario")
      ->required();
  app.add_option("files", o.files, "input manifests (or the scenario name)");
  app.add_option("--input", o.inputs, "input manifest");
  app.add_option("--set", o.set, "comma-separated point names");
  app.add_option("--over", o.over, "base manifest for amalgamate");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* window_opt = app.add_option("--window", window, "indiscernibility window");
  app.add_option("--subset-bound", o.subset_bound, "enumeration bound")->check(CLI::PositiveNumber);
  app.add_option("--json", o.json_out, "also write the report to this file");
  app.add_option("--jobs", o.jobs, "parallel fixtures for batch check-class")->check(CLI::PositiveNumber);
  app.add_option("--target", o.target, "target set for decompose/classify");
  app.add_option("--against", o.against, "second tuple for type-eq");
  app.add_option("--params", o.params, "parameters for type-eq");
  app.add_option("--relative", o.relative, "C for relative delta(C/A)");
  app.add_option("--point", o.point, "point for the CL membership test");
  app.add_option("--rounds", o.rounds, "audit rounds");
  app.add_option("--samples", o.samples, "sampled intervals for check-axioms");
  app.add_option("--k", o.k, "dp-rank: number of sequences");
  app.add_option("--len", o.len, "dp-rank: sequence length");
  app.add_option("--len-i", o.len_i, "non-distal: length of I");
  app.add_option("--len-j", o.len_j, "non-distal: length of J");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (seed_opt->count()) o.seed = seed;
  if (window_opt->count()) o.window = window;
  std::string json_out = o.json_out;
  Driver d(std::move(o));
  int status = 0;
  Json doc = d.run(status);
  std::string text = doc.dump(2) + "\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "cannot write '" << json_out << "'\n";
      status = 2;
    }
  }
  out << text;
  return status;
}

}  // namespace predim::cli
