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

// Finite approximations of the generic model: realizing closed extensions
// over closed subsets, inserting density witnesses, reporting on the
// axioms and auditing back-and-forth between two builds.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "predim/extension.hpp"
#include "predim/types.hpp"

namespace predim {

struct BuildRecord {
  std::string kind;                    // "realize" or "densify"
  std::vector<std::string> base;       // the closed set extended over
  std::vector<std::string> added;      // new point names in the stage
  bool image_closed = false;           // image closed in the new stage
  bool previous_closed = false;        // previous stage closed in the new one
  std::vector<std::string> notes;
  // Density witnesses only.
  std::string alpha, beta;
  bool coloured = false;
};

struct GenericModelState {
  std::size_t stage_index = 0;
  ColouredStructure current;
  std::vector<BuildRecord> history;
  std::uint64_t rng_seed = 0;
};

inline GenericModelState initial_state(ColouredStructure start, std::uint64_t seed = 0, const Limits& limits = {}) {
  require_class(start, limits);
  GenericModelState s;
  s.current = std::move(start);
  s.rng_seed = seed;
  return s;
}

/// Realizes `b_over_a` over the closed set `a` of the current stage. The
/// tower of `b_over_a` must extend the current tower, and the points of
/// `a` must appear in it under the same names and values.
inline GenericModelState realize_extension(const GenericModelState& state, const std::vector<std::string>& a,
                                           const ColouredStructure& b_over_a, const Limits& limits = {}) {
  const auto& m = state.current;
  PointSet as = m.set(a);
  Limits wide{std::max(limits.subset_bound, m.size())};
  if (!is_closed(m, as, m.all(), wide)) {
    PointSet bad = circuit_over(m, m.all() & ~as & m.colours(), as);
    throw Error(ErrorKind::NotClosed, "base set is not closed in the current stage", m.names(bad));
  }
  ColouredStructure base = m.restrict(as);
  auto am = free_amalgam(base, m, b_over_a, {}, {}, wide);
  GenericModelState next = state;
  next.stage_index = state.stage_index + 1;
  BuildRecord rec;
  rec.kind = "realize";
  rec.base = m.names(as);
  for (const auto& p : b_over_a.points()) {
    if (std::find(a.begin(), a.end(), p.name) != a.end()) continue;
    rec.added.push_back(am.right_embedding.at(p.name));
  }
  rec.image_closed = am.certificates.right_closed;
  rec.previous_closed = am.certificates.left_closed;
  rec.notes = am.certificates.notes;
  next.current = std::move(am.product);
  next.history.push_back(std::move(rec));
  return next;
}

namespace detail {

// Rational interval strictly between the values of two points.
inline Interval gap_between(const FieldElement& lo, const FieldElement& hi) {
  const unsigned budget = lo.tower()->precision_budget();
  for (unsigned k = 0; k <= budget; ++k) {
    Interval a = lo.enclosure(k), b = hi.enclosure(k);
    if (a.hi < b.lo) return {a.hi, b.lo};
  }
  throw Error(ErrorKind::WitnessCutUnsatisfiable, "cannot separate the interval endpoints");
}

inline std::string unused_name(const std::string& stem, const FieldTower& t, const ColouredStructure& m) {
  std::string n = stem;
  for (int k = 1; t.find(n) || m.find(n); ++k) n = stem + "_" + std::to_string(k);
  return n;
}

}  // namespace detail

/// Adds n fresh independent transcendentals strictly between alpha and beta.
inline GenericModelState insert_density_witnesses(const GenericModelState& state, const std::string& alpha,
                                                  const std::string& beta, std::size_t n, bool coloured,
                                                  const Limits& limits = {}) {
  const auto& m = state.current;
  const auto& va = m.point(m.index(alpha)).value;
  const auto& vb = m.point(m.index(beta)).value;
  if (va.compare(vb) >= 0) throw Error(ErrorKind::UsageError, "density interval needs alpha < beta", {alpha, beta});
  if (n == 0) return state;
  Limits wide{std::max(limits.subset_bound, m.size() + n)};
  PointSet a = closure(m, m.set({alpha, beta}), wide);
  Interval gap = detail::gap_between(va, vb);
  FieldTower::Ptr tower = m.tower();
  std::vector<Point> pts;
  for_each_member(a, [&](std::size_t i) { pts.push_back(m.point(i)); });
  std::vector<std::string> added;
  for (std::size_t j = 0; j < n; ++j) {
    Rational w = gap.width() / static_cast<long>(n);
    Rational lo = gap.lo + w * static_cast<long>(j) + w / 4;
    Rational hi = lo + w / 2;
    std::string stem = "w" + std::to_string(state.stage_index) + "_" + std::to_string(j);
    std::string gname = detail::unused_name(stem, *tower, m);
    tower = tower->extend(TranscendentalSpec{gname, {lo, hi}, state.rng_seed});
    pts.push_back({gname, FieldElement::generator(tower, gname), coloured});
    added.push_back(gname);
  }
  ColouredStructure b(tower, std::move(pts));
  auto next = realize_extension(state, m.names(a), b, wide);
  auto& rec = next.history.back();
  rec.kind = "densify";
  rec.alpha = alpha;
  rec.beta = beta;
  rec.coloured = coloured;
  PointSet witnesses = next.current.set(rec.added);
  Limits wide2{std::max(limits.subset_bound, next.current.size())};
  rec.image_closed = is_closed(next.current, witnesses, next.current.all(), wide2);
  return next;
}

struct IntervalReport {
  std::string alpha, beta;
  std::size_t coloured_depth = 0;    // independent closed coloured witnesses inside
  std::size_t uncoloured_depth = 0;  // greedy count of uncoloured ones
  bool from_history = false;
  std::string coloured_status, uncoloured_status;  // "present" or "pending"
};

struct AxiomReport {
  bool class_ok = true;
  std::vector<std::string> violation;
  std::vector<IntervalReport> intervals;
  std::vector<std::string> notes;
};

inline IntervalReport witness_depth(const ColouredStructure& m, std::size_t a, std::size_t b, const Limits& limits) {
  IntervalReport r;
  r.alpha = m.point(a).name;
  r.beta = m.point(b).name;
  const auto& va = m.point(a).value;
  const auto& vb = m.point(b).value;
  PointSet col = 0, unc = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& v = m.point(i).value;
    if (v.compare(va) <= 0 || v.compare(vb) >= 0) continue;
    if (m.coloured(i)) {
      if (m.trdeg(col | singleton(i)) > m.trdeg(col)) col |= singleton(i);
    } else if (m.trdeg(unc | singleton(i)) > m.trdeg(unc)) {
      PointSet next = unc | singleton(i);
      if (is_closed(m, next, m.all(), Limits{std::max(limits.subset_bound, m.size())})) unc = next;
    }
  }
  r.coloured_depth = static_cast<std::size_t>(cardinality(col));
  r.uncoloured_depth = static_cast<std::size_t>(cardinality(unc));
  r.coloured_status = r.coloured_depth > 0 ? "present" : "pending";
  r.uncoloured_status = r.uncoloured_depth > 0 ? "present" : "pending";
  return r;
}

/// Class membership plus, for sampled intervals, the density witnesses
/// present in this finite stage.
inline AxiomReport check_axioms(const GenericModelState& state, std::size_t subset_bound = kDefaultSubsetBound,
                                std::size_t interval_samples = 4) {
  const auto& m = state.current;
  Limits limits{subset_bound};
  AxiomReport rep;
  auto cls = check_class_membership(m, limits);
  rep.class_ok = cls.ok;
  rep.violation = m.names(cls.violation);
  if (!cls.ok) return rep;
  std::vector<std::pair<std::size_t, std::size_t>> picked;
  for (const auto& h : state.history) {
    if (h.kind != "densify") continue;
    std::pair<std::size_t, std::size_t> iv{m.index(h.alpha), m.index(h.beta)};
    if (std::find(picked.begin(), picked.end(), iv) == picked.end()) picked.push_back(iv);
  }
  std::size_t from_history = picked.size();
  const auto& ord = m.order();
  for (std::size_t k = 1; k < ord.size() && picked.size() < std::max(interval_samples, from_history); ++k) {
    std::pair<std::size_t, std::size_t> iv{ord[k - 1], ord[k]};
    if (std::find(picked.begin(), picked.end(), iv) == picked.end()) picked.push_back(iv);
  }
  for (std::size_t k = 0; k < picked.size(); ++k) {
    auto r = witness_depth(m, picked[k].first, picked[k].second, limits);
    r.from_history = k < from_history;
    rep.intervals.push_back(std::move(r));
  }
  rep.notes.push_back("a finite stage only approximates the density axioms; pending witnesses can be inserted");
  return rep;
}

// ---------------------------------------------------------------------------
// Back-and-forth audit.

struct AuditRound {
  std::size_t round = 0;
  std::string direction;  // "forth" or "back"
  std::string picked, counterpart;
  bool realized = false;  // counterpart created by realization
  bool equal = false;
  std::optional<Obstruction> obstruction;
};

struct AuditReport {
  bool passed = true;
  std::vector<AuditRound> rounds;
  std::optional<std::size_t> failed_round;
};

namespace detail {

// Builds, in `to`, a counterpart of x over the tuple correspondence by
// replaying the minimal steps from cl(tuple) to cl(tuple x). Supports
// independent steps and steps linear over earlier points.
inline std::pair<GenericModelState, std::string> realize_counterpart(const ColouredStructure& from,
                                                                     const std::vector<std::string>& from_tuple,
                                                                     const std::string& x,
                                                                     const GenericModelState& to_state,
                                                                     const std::vector<std::string>& to_tuple,
                                                                     const Limits& limits) {
  const auto& to = to_state.current;
  PointSet c = closure(from, from.set(from_tuple), limits);
  PointSet d = closure(from, c | singleton(from.index(x)), limits);
  // Correspondence on the base closure, by forced order.
  PointSet c_to = closure(to, to.set(to_tuple), limits);
  auto sc = from.sorted(c), st = to.sorted(c_to);
  if (sc.size() != st.size())
    throw Error(ErrorKind::Unsupported, "base closures differ in size; cannot realize a counterpart");
  std::map<std::size_t, FieldElement> image;  // from-index -> value in the new tower
  FieldTower::Ptr tower = to.tower();
  std::vector<Point> pts;
  for (std::size_t k = 0; k < sc.size(); ++k) {
    pts.push_back(to.point(st[k]));
    image.emplace(sc[k], to.point(st[k]).value);
  }
  std::map<std::size_t, std::string> names;
  for (std::size_t k = 0; k < sc.size(); ++k) names[sc[k]] = to.point(st[k]).name;
  auto chain = decompose(from, c, d, Limits{std::max(limits.subset_bound, from.size())});
  PointSet done = c;
  for (const auto& step : chain.steps) {
    std::size_t y = from.index(step.point);
    std::string name = unused_name(step.point, *tower, to);
    FieldElement value;
    if (step.kind == StepKind::AlgebraicUncoloured) {
      // y = q0 + sum q_i * earlier points.
      std::vector<std::size_t> earlier;
      for_each_member(done, [&](std::size_t i) { earlier.push_back(i); });
      std::vector<FieldElement> vals{from.point(y).value, FieldElement(from.tower(), 1)};
      for (auto i : earlier) vals.push_back(from.point(i).value);
      auto kernel = linear_relations(vals);
      std::optional<std::vector<Rational>> rel;
      for (const auto& kv : kernel)
        if (kv[0] != 0) rel = kv;
      if (!rel) throw Error(ErrorKind::Unsupported, "counterpart of '" + step.point + "' is not linear over its base");
      value = FieldElement(tower, -(*rel)[1] / (*rel)[0]);
      for (std::size_t k = 0; k < earlier.size(); ++k)
        if ((*rel)[k + 2] != 0) value += FieldElement(tower, -(*rel)[k + 2] / (*rel)[0]) * image.at(earlier[k]).lift(tower);
    } else {
      // Fresh transcendental in the same cut over the images.
      std::optional<FieldElement> below, above;
      for_each_member(done, [&](std::size_t i) {
        int s = from.point(i).value.compare(from.point(y).value);
        const FieldElement& v = image.at(i);
        if (s < 0 && (!below || below->lift(tower).compare(v.lift(tower)) < 0)) below = v;
        if (s > 0 && (!above || above->lift(tower).compare(v.lift(tower)) > 0)) above = v;
      });
      Interval w;
      if (below && above) {
        w = gap_between(below->lift(tower), above->lift(tower));
      } else if (below) {
        Rational top = below->lift(tower).enclosure(0).hi;
        w = Interval(top + 1, top + 2);
      } else if (above) {
        Rational bottom = above->lift(tower).enclosure(0).lo;
        w = Interval(bottom - 2, bottom - 1);
      } else {
        w = from.point(y).value.enclosure(0);
      }
      Rational q = w.width() / 4;
      tower = tower->extend(TranscendentalSpec{name, {w.lo + q, w.hi - q}, to_state.rng_seed});
      value = FieldElement::generator(tower, name);
    }
    pts.push_back({name, value.lift(tower), from.coloured(y)});
    image.emplace(y, value.lift(tower));
    names[y] = name;
    done |= singleton(y);
  }
  ColouredStructure b(tower, std::move(pts));
  auto next = realize_extension(to_state, to.names(c_to), b, Limits{std::max(limits.subset_bound, to.size() + 8)});
  const auto& rec = next.history.back();
  std::string counterpart = names.at(from.index(x));
  for (const auto& added : rec.added)
    if (added == counterpart || added.rfind("r_", 0) == 0) counterpart = added == counterpart ? added : counterpart;
  return {next, counterpart};
}

}  // namespace detail

/// Plays `rounds` rounds, alternating forth (pick in M) and back (pick in
/// N). Points are paired by name; a missing counterpart is realized on
/// the other side. Each round is certified by type equality.
inline AuditReport back_and_forth_audit(const GenericModelState& m_state, const GenericModelState& n_state,
                                        std::size_t rounds, const Limits& limits = {}) {
  AuditReport rep;
  GenericModelState ms = m_state, ns = n_state;
  std::vector<std::string> ta, tb;
  std::size_t next_m = 0, next_n = 0;
  for (std::size_t r = 0; r < rounds; ++r) {
    bool forth = r % 2 == 0;
    auto& src = forth ? ms : ns;
    auto& dst = forth ? ns : ms;
    auto& ts = forth ? ta : tb;
    auto& td = forth ? tb : ta;
    auto& cursor = forth ? next_m : next_n;
    // Next point of the source not yet in the tuple, in declaration order.
    std::optional<std::string> pick;
    while (cursor < src.current.size() && !pick) {
      const auto& nm = src.current.point(cursor++).name;
      if (std::find(ts.begin(), ts.end(), nm) == ts.end()) pick = nm;
    }
    AuditRound round;
    round.round = r;
    round.direction = forth ? "forth" : "back";
    if (!pick) {
      round.equal = true;
      round.picked = "";
      rep.rounds.push_back(round);
      continue;
    }
    round.picked = *pick;
    Limits wide{std::max({limits.subset_bound, src.current.size(), dst.current.size()})};
    if (dst.current.find(*pick)) {
      round.counterpart = *pick;
    } else {
      auto [next, name] = detail::realize_counterpart(src.current, ts, *pick, dst, td, wide);
      dst = std::move(next);
      round.counterpart = name;
      round.realized = true;
    }
    ts.push_back(round.picked);
    td.push_back(round.counterpart);
    TypeOptions opt;
    opt.limits = Limits{std::max({limits.subset_bound, ms.current.size(), ns.current.size()})};
    auto v = types_equal(ms.current, ta, ns.current, tb, opt);
    round.equal = v.equal;
    round.obstruction = v.obstruction;
    rep.rounds.push_back(round);
    if (!v.equal) {
      rep.passed = false;
      rep.failed_round = r;
      break;
    }
  }
  return rep;
}

}  // namespace predim
