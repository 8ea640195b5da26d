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

// JSON forms of structures, certificates and verdicts.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "predim/generic_builder.hpp"
#include "predim/scenarios.hpp"

namespace predim::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1";

inline Json names(const std::vector<std::string>& v) { return Json(v); }

/// Points in value order, colours listed, tower embedded.
inline Json structure(const ColouredStructure& m) {
  Json j;
  Json tower = Json::array();
  for (std::size_t i = 0; i < m.tower()->size(); ++i) tower.push_back(m.tower()->describe(i));
  j["tower"] = tower;
  Json pts = Json::array();
  for (std::size_t k = 0; k < m.order().size(); ++k) {
    const auto& p = m.point(m.order()[k]);
    pts.push_back({{"name", p.name}, {"value", p.value.to_string()}, {"coloured", p.coloured}, {"position", k}});
  }
  j["points"] = pts;
  std::vector<std::string> cols;
  for (auto i : m.sorted(m.colours())) cols.push_back(m.point(i).name);
  j["colours"] = cols;
  return j;
}

inline Json obstruction(const std::optional<Obstruction>& o) {
  if (!o) return nullptr;
  return {{"kind", std::string(to_string(o->kind))}, {"detail", o->detail}, {"left", o->left}, {"right", o->right}};
}

inline Json type_verdict(const TypeVerdict& v) {
  Json j;
  j["equal"] = v.equal;
  j["fast_path"] = v.fast_path;
  Json bij = Json::array();
  for (const auto& [a, b] : v.bijection) bij.push_back({a, b});
  j["bijection"] = bij;
  j["obstruction"] = obstruction(v.obstruction);
  return j;
}

inline Json chain(const ColouredStructure& m, const ExtensionChain& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"point", s.point}, {"kind", std::string(to_string(s.kind))}, {"delta", s.delta}});
  return {{"base", m.names(c.base)}, {"target", m.names(c.target)}, {"steps", steps}};
}

inline Json amalgam(const AmalgamResult& r) {
  Json j;
  j["product"] = structure(r.product);
  j["left_embedding"] = r.left_embedding;
  j["right_embedding"] = r.right_embedding;
  j["base_image"] = r.base_image;
  return j;
}

inline Json amalgam_certificates(const AmalgamCertificates& c) {
  return {{"left_closed", c.left_closed},       {"right_closed", c.right_closed},
          {"product_in_class", c.product_in_class}, {"independent", c.independent},
          {"order_preserved", c.order_preserved},   {"trdeg_left", c.trdeg_left},
          {"trdeg_right", c.trdeg_right},           {"trdeg_base", c.trdeg_base},
          {"trdeg_product", c.trdeg_product}};
}

inline Json build_record(const BuildRecord& r, std::size_t stage) {
  Json j;
  j["stage"] = stage;
  j["kind"] = r.kind;
  j["base"] = r.base;
  j["added"] = r.added;
  if (r.kind == "densify") {
    j["interval"] = {r.alpha, r.beta};
    j["coloured"] = r.coloured;
  }
  j["image_closed"] = r.image_closed;
  j["previous_closed"] = r.previous_closed;
  j["notes"] = r.notes;
  return j;
}

inline Json history(const GenericModelState& s) {
  Json h = Json::array();
  for (std::size_t i = 0; i < s.history.size(); ++i) h.push_back(build_record(s.history[i], i + 1));
  return h;
}

inline Json axioms(const AxiomReport& r) {
  Json j;
  j["class_ok"] = r.class_ok;
  j["violation"] = r.violation;
  Json iv = Json::array();
  for (const auto& i : r.intervals)
    iv.push_back({{"interval", {i.alpha, i.beta}},
                  {"from_history", i.from_history},
                  {"coloured_depth", i.coloured_depth},
                  {"coloured", i.coloured_status},
                  {"uncoloured_depth", i.uncoloured_depth},
                  {"uncoloured", i.uncoloured_status}});
  j["intervals"] = iv;
  return j;
}

inline Json audit(const AuditReport& r) {
  Json rounds = Json::array();
  for (const auto& x : r.rounds)
    rounds.push_back({{"round", x.round},
                      {"direction", x.direction},
                      {"picked", x.picked},
                      {"counterpart", x.counterpart},
                      {"realized", x.realized},
                      {"equal", x.equal},
                      {"obstruction", obstruction(x.obstruction)}});
  Json j;
  j["passed"] = r.passed;
  j["failed_round"] = r.failed_round ? Json(*r.failed_round) : Json(nullptr);
  j["rounds"] = rounds;
  return j;
}

inline Json verdicts(const std::vector<ScenarioVerdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs)
    out.push_back({{"name", v.name},
                   {"holds", v.holds},
                   {"detail", v.detail},
                   {"tuples_checked", v.tuples_checked},
                   {"first", v.first},
                   {"second", v.second},
                   {"obstruction", obstruction(v.obstruction)}});
  return out;
}

inline Json scenario(const DpRankScenario& s) {
  Json j;
  j["scenario"] = "dp-rank";
  j["parameters"] = {{"k", s.k}, {"len", s.length}, {"window", s.window}, {"seed", s.seed}};
  j["passed"] = s.passed();
  j["class_ok"] = s.class_ok;
  j["sequences"] = s.sequences;
  j["companions"] = s.companions;
  j["pivot"] = s.pivot;
  j["pivot_closure"] = s.pivot_closure;
  j["verdicts"] = verdicts(s.verdicts);
  j["structure"] = structure(s.structure);
  return j;
}

inline Json scenario(const NonDistalScenario& s) {
  Json j;
  j["scenario"] = "non-distal";
  j["parameters"] = {{"len_i", s.len_i}, {"len_j", s.len_j}, {"window", s.window}, {"seed", s.seed}};
  j["passed"] = s.passed();
  j["class_ok"] = s.class_ok;
  j["class_by_enumeration"] = s.class_by_enumeration;
  j["alpha"] = s.alpha;
  j["I"] = s.I;
  j["pivot"] = s.pivot;
  j["J"] = s.J;
  j["coloured_sum"] = s.coloured_sum;
  j["uncoloured_sum"] = s.uncoloured_sum;
  j["verdicts"] = verdicts(s.verdicts);
  j["structure"] = structure(s.structure);
  return j;
}

inline Json error(const Error& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind()));
  j["message"] = e.what();
  if (e.position()) {
    j["line"] = e.position()->line;
    j["column"] = e.position()->column;
  }
  j["witness"] = e.witness();
  return j;
}

}  // namespace predim::report
