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

// Witness configurations for dp-rank and non-distality, built as finite
// coloured structures and checked with the type oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "predim/types.hpp"

namespace predim {

struct ScenarioVerdict {
  std::string name;
  bool holds = false;  // the expected property holds
  std::string detail;
  std::size_t tuples_checked = 0;
  std::vector<std::string> first, second;
  std::optional<Obstruction> obstruction;
};

struct DpRankScenario {
  ColouredStructure structure;
  std::size_t k = 0, length = 0, window = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::string>> sequences;
  std::vector<std::vector<std::string>> companions;  // companion of each element
  std::string pivot;
  std::vector<std::string> pivot_companions;
  std::vector<std::string> pivot_closure;
  bool class_ok = false;
  std::vector<ScenarioVerdict> verdicts;
  std::vector<std::string> notes;

  bool passed() const {
    if (!class_ok) return false;
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
};

struct NonDistalScenario {
  ColouredStructure structure;
  std::size_t len_i = 0, len_j = 0, window = 0;
  std::uint64_t seed = 0;
  std::string alpha, pivot, coloured_sum, uncoloured_sum;
  std::vector<std::string> I, J;
  bool class_ok = false;
  bool class_by_enumeration = false;
  std::vector<ScenarioVerdict> verdicts;
  std::vector<std::string> notes;

  bool passed() const {
    if (!class_ok || !class_by_enumeration) return false;
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
};

namespace detail {

inline ScenarioVerdict indiscernibility_verdict(std::string name, const ColouredStructure& m,
                                                const std::vector<std::string>& seq, std::size_t window,
                                                const TypeOptions& opt, bool expect) {
  auto iv = window_indiscernible(m, seq, window, opt);
  ScenarioVerdict v;
  v.name = std::move(name);
  v.holds = iv.indiscernible == expect;
  v.tuples_checked = iv.tuples_checked;
  v.first = iv.first;
  v.second = iv.second;
  v.obstruction = iv.obstruction;
  v.detail = iv.indiscernible ? "all increasing tuples share one type" : "found tuples of different types";
  return v;
}

inline std::string sequence_letter(std::size_t j) {
  static const char* letters[] = {"a", "c", "d", "f", "g", "h", "m", "n", "u", "v", "w", "z"};
  if (j < std::size(letters)) return letters[j];
  return "s" + std::to_string(j);
}

inline void check_bounds(std::size_t points, const Limits& limits, const char* what) {
  if (points > ColouredStructure::kMaxPoints)
    throw Error(ErrorKind::ConstructionInfeasible, std::string(what) + " needs more than 64 points");
  guard(points, limits, what);
}

}  // namespace detail

/// k sequences of length L. Each element x is uncoloured with a coloured
/// companion x +- (L+1); the pivot b is uncoloured with cl(b) = {b} plus
/// one coloured companion per sequence, each sitting between the first
/// two companions of its sequence.
inline DpRankScenario build_dprank_witness(std::size_t k, std::size_t length, std::size_t window,
                                           std::uint64_t seed = 0, const Limits& limits = {}) {
  if (k < 2 || length < 2 || window < 1)
    throw Error(ErrorKind::UsageError, "dp-rank scenario needs k >= 2, L >= 2 and window >= 1");
  detail::check_bounds(2 * k * length + k + 1, limits, "dp-rank scenario");
  DpRankScenario sc;
  sc.k = k;
  sc.length = length;
  sc.window = window;
  sc.seed = seed;
  const long l = static_cast<long>(length);
  const long span = 2 * l + 2;
  FieldTower::Ptr tower = FieldTower::empty();
  std::vector<Point> pts;
  const Rational quarter(1, 4);
  auto fresh = [&](const std::string& name, const Rational& lo) {
    tower = tower->extend(TranscendentalSpec{name, {lo, lo + quarter}, seed});
    return FieldElement::generator(tower, name);
  };
  std::vector<FieldElement> pivot_parts;
  for (std::size_t j = 0; j < k; ++j) {
    const long r = static_cast<long>(j) * span;
    const bool above = j % 2 == 0;
    std::string s = detail::sequence_letter(j);
    std::vector<std::string> seq, comp;
    for (long i = 0; i < l; ++i) {
      std::string x = s + std::to_string(i), xh = "h" + x;
      // Above: x < companion. Below: companion < x.
      Rational lo = above ? Rational(r + i) : Rational(r + l + 1 + i);
      FieldElement v = fresh(x, lo);
      FieldElement offset(tower, l + 1);
      pts.push_back({x, v, false});
      pts.push_back({xh, above ? v + offset : v - offset, true});
      seq.push_back(x);
      comp.push_back(xh);
    }
    std::string e = "e" + std::to_string(j + 1);
    Rational elo = above ? Rational(2 * r + 2 * l + 3, 2) : Rational(2 * r + 1, 2);
    pivot_parts.push_back(fresh(e, elo));
    pts.push_back({e, pivot_parts.back(), true});
    sc.sequences.push_back(seq);
    sc.companions.push_back(comp);
    sc.pivot_companions.push_back(e);
  }
  FieldElement b(tower, static_cast<long>(k) * span);
  for (const auto& e : pivot_parts) b += e.lift(tower);
  sc.pivot = "b";
  pts.push_back({sc.pivot, b, false});
  sc.structure = ColouredStructure(tower, std::move(pts));
  const auto& m = sc.structure;
  Limits wide{std::max(limits.subset_bound, m.size())};
  sc.class_ok = check_class_membership(m, wide).ok;
  if (!sc.class_ok) throw Error(ErrorKind::Internal, "dp-rank structure left the class");
  sc.pivot_closure = m.names(closure(m, m.set({sc.pivot}), wide));

  TypeOptions opt;
  opt.limits = wide;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::string> others;
    for (std::size_t o = 0; o < k; ++o)
      if (o != j) others.insert(others.end(), sc.sequences[o].begin(), sc.sequences[o].end());
    TypeOptions over_others = opt;
    over_others.params = others;
    sc.verdicts.push_back(detail::indiscernibility_verdict(
        "sequence " + std::to_string(j) + " indiscernible over the other sequences", m, sc.sequences[j], window,
        over_others, true));
    TypeOptions over_pivot = opt;
    over_pivot.params = {sc.pivot};
    auto nv = detail::indiscernibility_verdict("sequence " + std::to_string(j) + " not indiscernible over the pivot",
                                               m, sc.sequences[j], window, over_pivot, false);
    // Stated for the leading pair of single elements.
    auto lead = types_equal(m, {sc.sequences[j][0]}, {sc.sequences[j][1]}, over_pivot);
    nv.holds = nv.holds && !lead.equal;
    nv.first = {sc.sequences[j][0]};
    nv.second = {sc.sequences[j][1]};
    nv.obstruction = lead.obstruction;
    if (lead.obstruction) nv.detail = lead.obstruction->detail;
    sc.verdicts.push_back(std::move(nv));
  }
  for (std::size_t j = 0; j < k; ++j)
    sc.verdicts.push_back(detail::indiscernibility_verdict("sequence " + std::to_string(j) + " indiscernible over nothing",
                                                           m, sc.sequences[j], window, opt, true));
  sc.notes.push_back("the pivot closure is {b} plus one coloured companion per sequence; b itself is kept in the closure");
  sc.notes.push_back("companions differ from their element by the rational offset " + std::to_string(length + 1));
  sc.notes.push_back("indiscernibility is checked for increasing tuples of length <= " + std::to_string(window));
  return sc;
}

/// alpha < I < b < J, all uncoloured and independent, plus the coloured
/// sum alpha + a0 + b and the uncoloured sum alpha + b + b0.
inline NonDistalScenario build_nondistal_witness(std::size_t len_i, std::size_t len_j, std::size_t window,
                                                 std::uint64_t seed = 0, const Limits& limits = {}) {
  if (len_i < 2 || len_j < 2 || window < 2)
    throw Error(ErrorKind::UsageError, "non-distality scenario needs lenI, lenJ >= 2 and window >= 2");
  detail::check_bounds(len_i + len_j + 4, limits, "non-distality scenario");
  NonDistalScenario sc;
  sc.len_i = len_i;
  sc.len_j = len_j;
  sc.window = window;
  sc.seed = seed;
  FieldTower::Ptr tower = FieldTower::empty();
  std::vector<Point> pts;
  auto fresh = [&](const std::string& name, long lo) {
    tower = tower->extend(TranscendentalSpec{name, {Rational(lo), Rational(4 * lo + 1, 4)}, seed});
    pts.push_back({name, FieldElement::generator(tower, name), false});
    return name;
  };
  const long base_i = 10, base_b = base_i + static_cast<long>(len_i) + 1, base_j = base_b + 2;
  sc.alpha = fresh("alpha", 1);
  for (std::size_t i = 0; i < len_i; ++i) sc.I.push_back(fresh("a" + std::to_string(i), base_i + static_cast<long>(i)));
  sc.pivot = fresh("b", base_b);
  for (std::size_t j = 0; j < len_j; ++j) sc.J.push_back(fresh("b" + std::to_string(j), base_j + static_cast<long>(j)));
  auto val = [&](const std::string& n) { return FieldElement::generator(tower, n); };
  sc.coloured_sum = "s1";
  sc.uncoloured_sum = "s2";
  pts.push_back({sc.coloured_sum, val(sc.alpha) + val(sc.I[0]) + val(sc.pivot), true});
  pts.push_back({sc.uncoloured_sum, val(sc.alpha) + val(sc.pivot) + val(sc.J[0]), false});
  for (auto& p : pts) p.value = p.value.lift(tower);
  sc.structure = ColouredStructure(tower, std::move(pts));
  const auto& m = sc.structure;
  Limits wide{std::max(limits.subset_bound, m.size())};
  sc.class_ok = check_class_membership(m, wide).ok;
  // Independent check: every subset has delta >= 0.
  guard(m.size(), limits, "non-distality enumeration");
  sc.class_by_enumeration = true;
  for (PointSet s = 1; s <= m.all() && sc.class_by_enumeration; ++s)
    if (delta(m, s) < 0) sc.class_by_enumeration = false;

  TypeOptions opt;
  opt.limits = wide;
  std::vector<std::string> ibj = sc.I;
  ibj.push_back(sc.pivot);
  ibj.insert(ibj.end(), sc.J.begin(), sc.J.end());
  std::vector<std::string> ij = sc.I;
  ij.insert(ij.end(), sc.J.begin(), sc.J.end());
  TypeOptions over_alpha = opt;
  over_alpha.params = {sc.alpha};
  sc.verdicts.push_back(detail::indiscernibility_verdict("IbJ indiscernible over nothing", m, ibj, window, opt, true));
  sc.verdicts.push_back(detail::indiscernibility_verdict("IJ indiscernible over alpha", m, ij, window, over_alpha, true));
  auto fail = detail::indiscernibility_verdict("IbJ not indiscernible over alpha", m, ibj, window, over_alpha, false);
  {
    // The witnessing pair: (a0, b) against (b, b0).
    auto tv = types_equal(m, {sc.I[0], sc.pivot}, {sc.pivot, sc.J[0]}, over_alpha);
    bool at_sums = !tv.equal && tv.obstruction && tv.obstruction->kind == ObstructionKind::Colour &&
                   tv.obstruction->left == std::vector<std::string>{sc.coloured_sum} &&
                   tv.obstruction->right == std::vector<std::string>{sc.uncoloured_sum};
    fail.holds = fail.holds && at_sums;
    fail.first = {sc.I[0], sc.pivot};
    fail.second = {sc.pivot, sc.J[0]};
    fail.obstruction = tv.obstruction;
    fail.detail = tv.obstruction ? tv.obstruction->detail : "types agree";
  }
  sc.verdicts.push_back(std::move(fail));
  // Without the sums the sequence is indiscernible over alpha.
  PointSet keep = m.all() & ~m.set({sc.coloured_sum, sc.uncoloured_sum});
  auto stripped = m.restrict(keep);
  sc.verdicts.push_back(
      detail::indiscernibility_verdict("IbJ indiscernible over alpha without the sums", stripped, ibj, window, over_alpha, true));
  sc.notes.push_back("base points alpha, I, b, J are uncoloured; colouring them would give the set {alpha, a0, b, s1} "
                     "predimension -1");
  sc.notes.push_back("indiscernibility is checked for increasing tuples of length <= " + std::to_string(window));
  return sc;
}

}  // namespace predim
