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

// Randomized invariants over small structures.

#include <gtest/gtest.h>

#include "../acceptance/generators.hpp"

namespace predim {
namespace {

using namespace testing;

TEST(Rank, MatroidAxioms) {
  Rng rng(21);
  for (int k = 0; k < 40; ++k) {
    auto m = random_structure(rng, 6);
    const PointSet all = m.all();
    EXPECT_EQ(m.trdeg(0), 0u);
    for (PointSet a = 0; a <= all; ++a) {
      EXPECT_LE(m.trdeg(a), static_cast<std::size_t>(cardinality(a)));
      for (PointSet b = 0; b <= all; ++b) {
        if (is_subset(a, b)) {
          EXPECT_LE(m.trdeg(a), m.trdeg(b));
        }
        EXPECT_LE(m.trdeg(a | b) + m.trdeg(a & b), m.trdeg(a) + m.trdeg(b));
      }
    }
  }
}

TEST(Closure, ClosureOperatorLaws) {
  Rng rng(22);
  for (int k = 0; k < 40; ++k) {
    auto m = random_class_structure(rng, 5);
    const PointSet all = m.all();
    for (PointSet a = 0; a <= all; ++a) {
      PointSet cl = closure(m, a);
      EXPECT_TRUE(is_subset(a, cl));
      EXPECT_EQ(closure(m, cl), cl);
      EXPECT_EQ(cl, closure_brute(m, a));
      EXPECT_TRUE(closed_brute(m, cl, all));
      for (PointSet b = a;; b = (b + 1) | a) {
        EXPECT_TRUE(is_subset(cl, closure(m, b)));
        if (b == all) break;
      }
    }
    // subsets of the colours are closed
    const PointSet p = m.colours();
    for (PointSet s = p;; s = (s - 1) & p) {
      EXPECT_TRUE(is_closed(m, s, all));
      if (s == 0) break;
    }
  }
}

TEST(Closure, ClosedSetsIntersect) {
  Rng rng(23);
  for (int k = 0; k < 40; ++k) {
    auto m = random_class_structure(rng, 5);
    const PointSet all = m.all();
    for (PointSet a = 0; a <= all; ++a)
      for (PointSet b = 0; b <= all; ++b)
        if (is_closed(m, a, all) && is_closed(m, b, all)) {
          EXPECT_TRUE(is_closed(m, a & b, all));
        }
  }
}

TEST(Decompose, StepsCarryTheirPredimension) {
  Rng rng(24);
  for (int k = 0; k < 60; ++k) {
    auto m = random_class_structure(rng, 5);
    std::uniform_int_distribution<PointSet> pick(0, m.all());
    PointSet a = closure(m, pick(rng));
    auto ch = decompose(m, a, m.all());
    PointSet c = a;
    long sum = 0;
    for (const auto& s : ch.steps) {
      std::size_t x = m.index(s.point);
      EXPECT_EQ(delta_rel(m, singleton(x), c), expected_delta(s.kind));
      EXPECT_EQ(s.delta, expected_delta(s.kind));
      c |= singleton(x);
      sum += s.delta;
      EXPECT_TRUE(closed_brute(m, c, m.all()));
    }
    EXPECT_EQ(c, m.all());
    EXPECT_EQ(sum, delta_rel(m, m.all(), a));
  }
}

TEST(Types, EquivalenceRelation) {
  Rng rng(25);
  for (int k = 0; k < 40; ++k) {
    auto m = random_class_structure(rng, 5);
    if (m.size() < 2) continue;
    std::vector<std::string> names = m.names(m.all());
    std::vector<std::vector<std::string>> tuples;
    for (int i = 0; i < 3; ++i) {
      std::shuffle(names.begin(), names.end(), rng);
      tuples.push_back({names[0], names[1]});
    }
    for (const auto& t : tuples) EXPECT_TRUE(types_equal(m, t, t).equal);
    auto eq = [&](int i, int j) { return types_equal(m, tuples[i], tuples[j]).equal; };
    EXPECT_EQ(eq(0, 1), eq(1, 0));
    if (eq(0, 1) && eq(1, 2)) {
      EXPECT_TRUE(eq(0, 2));
    }
  }
}

TEST(Builder, RealizingTheBaseChangesNothing) {
  Rng rng(26);
  for (int k = 0; k < 30; ++k) {
    auto m = random_class_structure(rng, 5);
    std::uniform_int_distribution<PointSet> pick(0, m.all());
    PointSet a = closure(m, pick(rng));
    auto s0 = initial_state(m);
    auto s1 = realize_extension(s0, m.names(a), m.restrict(a));
    EXPECT_EQ(s1.current.size(), m.size());
    EXPECT_TRUE(s1.history.back().added.empty());
    for (const auto& p : m.points())
      EXPECT_EQ(s1.current.point(s1.current.index(p.name)).value.to_string(), p.value.to_string());
  }
}

TEST(Builder, EarlierStagesStayClosed) {
  Rng rng(27);
  for (int k = 0; k < 5; ++k) {
    auto t = standard_tower();
    ColouredStructure m0(t, {{"lo", FieldElement(t, 0), false}, {"hi", FieldElement(t, 1), false}});
    auto s = initial_state(m0, static_cast<std::uint64_t>(k));
    std::bernoulli_distribution colour(0.5);
    for (int step = 0; step < 3; ++step) {
      const auto before = s.current;
      std::vector<std::string> order;
      for (auto i : before.order()) order.push_back(before.point(i).name);
      std::uniform_int_distribution<std::size_t> at(0, order.size() - 2);
      std::size_t i = at(rng);
      s = insert_density_witnesses(s, order[i], order[i + 1], 1, colour(rng));
      EXPECT_TRUE(in_class(s.current));
      EXPECT_TRUE(closed_brute(s.current, s.current.set(before.names(before.all())), s.current.all()));
      EXPECT_EQ(s.stage_index, static_cast<std::size_t>(step + 1));
    }
  }
}

}  // namespace
}  // namespace predim
