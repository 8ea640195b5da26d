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

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "predim/predimension.hpp"

namespace predim {

enum class StepKind { AlgebraicUncoloured, IndependentColoured, IndependentUncoloured };

inline std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::AlgebraicUncoloured: return "AlgebraicUncoloured";
    case StepKind::IndependentColoured: return "IndependentColoured";
    case StepKind::IndependentUncoloured: return "IndependentUncoloured";
  }
  return "Unknown";
}

inline long expected_delta(StepKind k) { return k == StepKind::IndependentUncoloured ? 1 : 0; }

struct ExtensionStep {
  std::string point;
  StepKind kind;
  long delta;
};

struct ExtensionChain {
  PointSet base = 0;
  PointSet target = 0;
  std::vector<ExtensionStep> steps;
};

/// Kind of the one-point extension c -> c + {x}, or nullopt when it has
/// negative predimension (coloured and algebraic).
inline std::optional<StepKind> step_kind(const ColouredStructure& m, PointSet c, std::size_t x) {
  bool algebraic = m.algebraic_over(singleton(x), c);
  bool coloured = m.coloured(x);
  if (algebraic) return coloured ? std::nullopt : std::optional(StepKind::AlgebraicUncoloured);
  return coloured ? StepKind::IndependentColoured : StepKind::IndependentUncoloured;
}

inline void require_closed(const ColouredStructure& m, PointSet a, PointSet b, const Limits& limits) {
  if (is_closed(m, a, b, limits)) return;
  PointSet bad = circuit_over(m, b & ~a & m.colours(), a);
  throw Error(ErrorKind::NotClosed, "A is not closed in B", m.names(bad));
}

/// A chain of one-point minimal extensions from a to b. Predimension-0
/// steps come first; ties go to the lowest declaration index.
inline ExtensionChain decompose(const ColouredStructure& m, PointSet a, PointSet b, const Limits& limits = {}) {
  require_closed(m, a, b, limits);
  require_class(m, limits);
  ExtensionChain chain{a, b, {}};
  PointSet c = a;
  while (c != b) {
    std::optional<std::size_t> best;
    StepKind best_kind = StepKind::IndependentUncoloured;
    for_each_member(b & ~c, [&](std::size_t x) {
      if (best && best_kind != StepKind::IndependentUncoloured) return;
      PointSet next = c | singleton(x);
      if (!is_closed(m, next, b, limits)) return;
      auto kind = step_kind(m, c, x);
      if (!kind) return;
      if (!best || (best_kind == StepKind::IndependentUncoloured && *kind != StepKind::IndependentUncoloured)) {
        best = x;
        best_kind = *kind;
      }
    });
    if (!best) throw Error(ErrorKind::Internal, "no closed one-point step from a closed set", m.names(c));
    long d = delta_rel(m, singleton(*best), c);
    if (d != expected_delta(best_kind))
      throw Error(ErrorKind::Internal, "step predimension disagrees with its kind", {m.point(*best).name});
    chain.steps.push_back({m.point(*best).name, best_kind, d});
    c |= singleton(*best);
  }
  return chain;
}

/// Kind of a minimal extension a < b. Throws NotMinimal with an
/// intermediate closed set when one exists.
inline StepKind classify_minimal(const ColouredStructure& m, PointSet a, PointSet b, const Limits& limits = {}) {
  require_closed(m, a, b, limits);
  PointSet diff = b & ~a;
  guard(static_cast<std::size_t>(cardinality(diff)), limits, "classify_minimal");
  std::vector<std::size_t> members;
  for_each_member(diff, [&](std::size_t i) { members.push_back(i); });
  const std::size_t n = members.size();
  if (n == 0) throw Error(ErrorKind::NotMinimal, "A = B is not a proper extension");
  // Intermediate sets by size, then lexicographically.
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      PointSet c = a;
      for (auto i : pick) c |= singleton(members[i]);
      if (is_closed(m, a, c, limits) && is_closed(m, c, b, limits))
        throw Error(ErrorKind::NotMinimal, "intermediate closed set exists", m.names(c));
      std::size_t j = k;
      while (j > 0 && pick[j - 1] == n - k + j - 1) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < k; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  if (n != 1) throw Error(ErrorKind::InvariantViolation, "minimal extension with more than one new point", m.names(diff));
  auto kind = step_kind(m, a, members[0]);
  if (!kind) throw Error(ErrorKind::Internal, "closed one-point extension of negative predimension");
  return *kind;
}

// ---------------------------------------------------------------------------
// Free amalgamation.

using NameMap = std::map<std::string, std::string>;

struct AmalgamCertificates {
  bool left_closed = false;
  bool right_closed = false;
  bool product_in_class = false;
  bool independent = false;
  bool order_preserved = false;
  std::size_t trdeg_left = 0, trdeg_right = 0, trdeg_base = 0, trdeg_product = 0;
  std::vector<std::string> notes;
};

struct AmalgamResult {
  ColouredStructure product;
  NameMap left_embedding;
  NameMap right_embedding;
  NameMap base_image;
  AmalgamCertificates certificates;
};

namespace detail {

// Generators used by the values of s, closed under minimal-polynomial
// dependencies.
inline std::set<std::size_t> support(const ColouredStructure& m, PointSet s) {
  std::set<std::size_t> out;
  std::vector<std::size_t> todo;
  auto add_poly = [&](const Polynomial& p) {
    for (long v = 0; v <= p.max_variable(); ++v)
      if (p.uses(static_cast<std::size_t>(v)) && out.insert(static_cast<std::size_t>(v)).second)
        todo.push_back(static_cast<std::size_t>(v));
  };
  for_each_member(s, [&](std::size_t i) {
    add_poly(m.point(i).value.numerator());
    add_poly(m.point(i).value.denominator());
  });
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    if (m.tower()->is_algebraic(v)) add_poly(m.tower()->min_poly(v));
  }
  return out;
}

inline std::string fresh_name(const std::string& base, const std::function<bool(const std::string&)>& taken) {
  std::string n = base;
  if (!taken(n)) return n;
  n = "r_" + base;
  for (int k = 2; taken(n); ++k) n = "r" + std::to_string(k) + "_" + base;
  return n;
}

inline bool same_root(const FieldTower& t, std::size_t a, std::size_t b) {
  for (unsigned k = 0; k <= t.precision_budget(); ++k) {
    Interval ia = t.interval(a, k), ib = t.interval(b, k);
    if (!ia.overlaps(ib)) return false;
    Interval b0 = t.interval(b, 0);
    if (b0.lo <= ia.lo && ia.hi <= b0.hi) return true;
  }
  throw Error(ErrorKind::PrecisionExhausted, "cannot separate roots of '" + t.name(a) + "' and '" + t.name(b) + "'");
}

}  // namespace detail

/// Free amalgam of left and right over base. `left_map`/`right_map` send
/// base point names to factor point names (identity when empty). The
/// factors' towers must start with the base tower's generators.
inline AmalgamResult free_amalgam(const ColouredStructure& base, const ColouredStructure& left,
                                  const ColouredStructure& right, NameMap left_map = {}, NameMap right_map = {},
                                  const Limits& limits = {}) {
  for (const auto& p : base.points()) {
    left_map.try_emplace(p.name, p.name);
    right_map.try_emplace(p.name, p.name);
  }
  const auto& t0 = base.tower();
  if (!left.tower()->extends(*t0) || !right.tower()->extends(*t0))
    throw Error(ErrorKind::TowerMismatch, "factor towers must extend the base tower");
  auto image = [&](const ColouredStructure& f, const NameMap& map, const char* side) {
    PointSet s = 0;
    for (const auto& p : base.points()) {
      auto i = f.find(map.at(p.name));
      if (!i) throw Error(ErrorKind::InvalidHandle, std::string(side) + " factor lacks the image of '" + p.name + "'", {p.name});
      const auto& q = f.point(*i);
      if (!(q.value == p.value) || q.coloured != p.coloured)
        throw Error(ErrorKind::NotClosedInFactor,
                    "base point '" + p.name + "' is not embedded into the " + side + " factor", {p.name});
      s |= singleton(*i);
    }
    return s;
  };
  PointSet left_base = image(left, left_map, "left");
  PointSet right_base = image(right, right_map, "right");
  for (auto [f, s, side] : {std::tuple{&left, left_base, "left"}, std::tuple{&right, right_base, "right"}}) {
    if (!is_closed(*f, s, f->all(), limits)) {
      PointSet bad = circuit_over(*f, f->all() & ~s & f->colours(), s);
      throw Error(ErrorKind::NotClosedInFactor, std::string("base is not closed in the ") + side + " factor",
                  f->names(bad));
    }
  }

  AmalgamResult result;
  auto& cert = result.certificates;
  const auto& rt = *right.tower();
  PointSet base_all = base.all();
  std::set<std::size_t> shared = detail::support(base, base_all);
  std::set<std::size_t> right_used = detail::support(right, right.all());

  // Product tower: the left tower, then the right generators that are not
  // shared through the base points.
  FieldTower::Ptr tower = left.tower();
  std::vector<std::size_t> right_to_product(rt.size(), static_cast<std::size_t>(-1));
  for (std::size_t g : shared) right_to_product[g] = g;
  auto taken = [&](const std::string& n) { return tower->find(n).has_value(); };
  for (std::size_t g = 0; g < rt.size(); ++g) {
    if (right_to_product[g] != static_cast<std::size_t>(-1) || !right_used.count(g)) continue;
    const auto& spec = rt.spec(g);
    std::string name = detail::fresh_name(rt.name(g), taken);
    if (const auto* ts = std::get_if<TranscendentalSpec>(&spec)) {
      TranscendentalSpec copy = *ts;
      copy.name = name;
      // Keep the same witness stream under the new name.
      copy.seed = ts->seed ^ stable_hash(ts->name) ^ stable_hash(name);
      for (std::size_t h = 0; h < tower->size(); ++h) {
        const auto* other = std::get_if<TranscendentalSpec>(&tower->spec(h));
        if (!other) continue;
        bool same_stream = (stable_hash(other->name) ^ other->seed) == (stable_hash(copy.name) ^ copy.seed);
        if (other->witness == copy.witness && same_stream) {
          // Two formal transcendentals would share one real value: narrow
          // to a deep dyadic cell of the original and reseed inside it.
          Interval cell = rt.interval(g, 24);
          copy.witness = cell;
          copy.seed ^= 0x9e3779b97f4a7c15ULL;
          cert.notes.push_back("reseeded transcendental '" + name + "' inside " + cell.to_string());
        }
      }
      tower = tower->extend(copy);
    } else {
      const auto& as = std::get<AlgebraicSpec>(spec);
      AlgebraicSpec copy = as;
      copy.name = name;
      std::vector<std::size_t> rename(g + 1);
      for (std::size_t v = 0; v < g; ++v) rename[v] = right_to_product[v];
      rename[g] = tower->size();
      copy.min_poly = as.min_poly.rename(rename);
      // Identify with an existing generator carrying the same root.
      std::optional<std::size_t> same;
      for (std::size_t h = 0; h < tower->size() && !same; ++h) {
        const auto* other = std::get_if<AlgebraicSpec>(&tower->spec(h));
        if (!other) continue;
        std::vector<std::size_t> to_new(h + 1);
        for (std::size_t v = 0; v < h; ++v) to_new[v] = v;
        to_new[h] = tower->size();
        if (!(monic(other->min_poly.rename(to_new)) == monic(copy.min_poly))) continue;
        auto probe = tower->extend(copy);
        if (detail::same_root(*probe, h, probe->size() - 1)) same = h;
      }
      if (same) {
        right_to_product[g] = *same;
        cert.notes.push_back("identified algebraic '" + rt.name(g) + "' with '" + tower->name(*same) + "'");
        continue;
      }
      tower = tower->extend(copy);
    }
    right_to_product[g] = tower->size() - 1;
  }

  // Points: left points keep their names, right points are transported.
  std::vector<Point> points;
  for (const auto& p : left.points()) {
    points.push_back({p.name, p.value.lift(tower), p.coloured});
    result.left_embedding[p.name] = p.name;
  }
  for (const auto& p : base.points()) result.base_image[p.name] = left_map.at(p.name);
  std::map<std::string, std::string> right_base_inverse;
  for (const auto& [b, r] : right_map) right_base_inverse[r] = left_map.at(b);
  auto transport = [&](const FieldElement& v) {
    auto num = FieldElement::from_polynomial(tower, v.numerator().rename(right_to_product));
    auto den = FieldElement::from_polynomial(tower, v.denominator().rename(right_to_product));
    return num / den;
  };
  std::set<std::string> names;
  for (const auto& p : points) names.insert(p.name);
  for (const auto& p : right.points()) {
    if (auto it = right_base_inverse.find(p.name); it != right_base_inverse.end()) {
      result.right_embedding[p.name] = it->second;
      continue;
    }
    FieldElement v = transport(p.value);
    std::optional<std::size_t> equal;
    for (std::size_t i = 0; i < points.size() && !equal; ++i)
      if (points[i].value == v) equal = i;
    if (equal) {
      if (points[*equal].coloured != p.coloured)
        throw Error(ErrorKind::NotFreeOverBase, "right point '" + p.name + "' coincides with a differently coloured point",
                    {p.name, points[*equal].name});
      result.right_embedding[p.name] = points[*equal].name;
      cert.notes.push_back("right point '" + p.name + "' coincides with '" + points[*equal].name + "'");
      continue;
    }
    std::string name = detail::fresh_name(p.name, [&](const std::string& n) { return names.count(n) > 0; });
    names.insert(name);
    points.push_back({name, v, p.coloured});
    result.right_embedding[p.name] = name;
  }
  result.product = ColouredStructure(tower, std::move(points));
  const auto& prod = result.product;

  auto image_set = [&](const NameMap& emb) {
    PointSet s = 0;
    for (const auto& [from, to] : emb) s |= singleton(prod.index(to));
    return s;
  };
  PointSet left_img = image_set(result.left_embedding);
  PointSet right_img = image_set(result.right_embedding);
  Limits wide{std::max(limits.subset_bound, prod.size())};
  cert.left_closed = is_closed(prod, left_img, prod.all(), wide);
  cert.right_closed = is_closed(prod, right_img, prod.all(), wide);
  cert.product_in_class = in_class(prod);
  cert.trdeg_left = left.trdeg(left.all());
  cert.trdeg_right = right.trdeg(right.all());
  cert.trdeg_base = base.trdeg(base_all);
  cert.trdeg_product = prod.trdeg(prod.all());
  cert.independent = cert.trdeg_product + cert.trdeg_base == cert.trdeg_left + cert.trdeg_right;
  cert.order_preserved = true;
  for (const auto* side : {&left, &right}) {
    const auto& emb = side == &left ? result.left_embedding : result.right_embedding;
    const auto& ord = side->order();
    for (std::size_t k = 1; k < ord.size(); ++k) {
      std::size_t a = prod.index(emb.at(side->point(ord[k - 1]).name));
      std::size_t b = prod.index(emb.at(side->point(ord[k]).name));
      if (prod.rank(a) >= prod.rank(b)) cert.order_preserved = false;
    }
  }
  if (!cert.order_preserved)
    throw Error(ErrorKind::WitnessCutUnsatisfiable, "could not place fresh witnesses in the factors' cuts");
  if (!cert.independent)
    throw Error(ErrorKind::NotFreeOverBase, "factors are not independent over the base in the product");
  if (!cert.left_closed || !cert.right_closed || !cert.product_in_class)
    throw Error(ErrorKind::Internal, "free amalgam certificate failed");
  return result;
}

}  // namespace predim
