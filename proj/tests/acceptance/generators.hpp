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

// Structure generators and brute-force oracles shared by the property
// and acceptance tests.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "predim/predim.hpp"

namespace predim::testing {

using Rng = std::mt19937_64;

inline FieldTower::Ptr standard_tower() {
  static const FieldTower::Ptr t = [] {
    Polynomial x = Polynomial::variable(3);
    return FieldTower::empty()
        ->extend(TranscendentalSpec{"t1", {Rational(3), Rational(4)}})
        ->extend(TranscendentalSpec{"t2", {Rational(7), Rational(8)}})
        ->extend(TranscendentalSpec{"t3", {Rational(11), Rational(12)}})
        ->extend(AlgebraicSpec{"r", x * x - Polynomial::variable(0), {Rational(1), Rational(2)}});
  }();
  return t;
}

inline FieldElement gen(const FieldTower::Ptr& t, const char* n) { return FieldElement::generator(t, n); }

// Eight values with every dependence pattern the family needs: a rational,
// independent generators, a translate, sums, a product and a square root.
inline std::vector<std::pair<std::string, FieldElement>> family_pool(const FieldTower::Ptr& t) {
  FieldElement t1 = gen(t, "t1"), t2 = gen(t, "t2");
  return {{"z", FieldElement(t, 0)},       {"a", t1},      {"b", t2},          {"c", t1 + FieldElement(t, 1)},
          {"d", t1 + t2},                  {"e", t1 * t2}, {"r", gen(t, "r")}, {"f", gen(t, "t3")}};
}

/// Every sub-configuration of the pool with at most `max_points` points
/// and every admissible colouring, restricted to the class.
inline std::vector<ColouredStructure> exhaustive_family(std::size_t max_points = 5) {
  auto t = standard_tower();
  auto pool = family_pool(t);
  const std::size_t n = pool.size();
  std::vector<ColouredStructure> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) pick.push_back(i);
    if (pick.size() > max_points) continue;
    for (unsigned cmask = 0; cmask < (1u << pick.size()); ++cmask) {
      std::vector<Point> pts;
      bool ok = true;
      for (std::size_t k = 0; k < pick.size(); ++k) {
        bool col = cmask >> k & 1u;
        if (col && pool[pick[k]].second.is_rational()) ok = false;
        pts.push_back({pool[pick[k]].first, pool[pick[k]].second, col});
      }
      if (!ok) continue;
      ColouredStructure m(t, std::move(pts));
      if (in_class(m)) out.push_back(std::move(m));
    }
  }
  return out;
}

inline Rational small_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// A random element of the standard tower built from a few shapes.
inline FieldElement random_value(const FieldTower::Ptr& t, Rng& rng) {
  static const char* gens[] = {"t1", "t2", "t3", "r"};
  std::uniform_int_distribution<int> pickg(0, 3), shape(0, 7);
  FieldElement g1 = gen(t, gens[pickg(rng)]);
  FieldElement g2 = gen(t, gens[pickg(rng)]);
  FieldElement q(t, small_rational(rng));
  switch (shape(rng)) {
    case 0: return g1;
    case 1: return g1 + q;
    case 2: return q.is_zero() ? g1 : g1 * q;
    case 3: return g1 + g2;
    case 4: return g1 * g2;
    case 5: return g1 * g1 + q;
    case 6: return g1 + g2 + gen(t, gens[pickg(rng)]);
    default: return q;
  }
}

/// Random structure with 1..max_points distinct points; colours are
/// random, so class membership is not guaranteed.
inline ColouredStructure random_structure(Rng& rng, std::size_t max_points, double colour_rate = 0.4) {
  auto t = standard_tower();
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::bernoulli_distribution colour(colour_rate);
  const std::size_t n = count(rng);
  std::vector<Point> pts;
  while (pts.size() < n) {
    FieldElement v = random_value(t, rng);
    bool dup = false;
    for (const auto& p : pts) dup = dup || p.value == v;
    if (dup) continue;
    pts.push_back({"p" + std::to_string(pts.size()), v, !v.is_rational() && colour(rng)});
  }
  return ColouredStructure(t, std::move(pts));
}

inline ColouredStructure random_class_structure(Rng& rng, std::size_t max_points, double colour_rate = 0.4) {
  while (true) {
    auto m = random_structure(rng, max_points, colour_rate);
    if (in_class(m)) return m;
  }
}

// ---------------------------------------------------------------------------
// Oracles written from the definitions only.

/// A closed in B iff every C with A <= C <= B has delta(C) >= delta(A).
inline bool closed_brute(const ColouredStructure& m, PointSet a, PointSet b) {
  PointSet extra = b & ~a;
  for (PointSet s = extra;; s = (s - 1) & extra) {
    if (delta(m, a | s) < delta(m, a)) return false;
    if (s == 0) break;
  }
  return true;
}

/// Least closed superset of a, found as the intersection of all closed
/// supersets.
inline PointSet closure_brute(const ColouredStructure& m, PointSet a) {
  PointSet all = m.all(), out = all;
  PointSet extra = all & ~a;
  for (PointSet s = extra;; s = (s - 1) & extra) {
    if (closed_brute(m, a | s, all)) out &= a | s;
    if (s == 0) break;
  }
  return out;
}

}  // namespace predim::testing
