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

#include <gtest/gtest.h>

#include "predim/scenarios.hpp"

namespace predim {
namespace {

TypeOptions over(std::vector<std::string> params) {
  TypeOptions o;
  o.params = std::move(params);
  return o;
}

TEST(DpRank, TwoByTwo) {
  auto sc = build_dprank_witness(2, 2, 2, 7);
  EXPECT_TRUE(sc.class_ok);
  EXPECT_TRUE(sc.passed());
  EXPECT_EQ(sc.pivot_closure.size(), 3u);
  const auto& m = sc.structure;
  // Each element has a two-point closure.
  for (const auto& seq : sc.sequences)
    for (const auto& x : seq) EXPECT_EQ(cardinality(closure(m, m.set({x}))), 2);
  auto v = types_equal(m, {"a0"}, {"a1"}, over({"b"}));
  EXPECT_FALSE(v.equal);
  ASSERT_TRUE(v.obstruction.has_value());
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::Order);
  EXPECT_EQ(v.obstruction->left, (std::vector<std::string>{"ha0", "e1"}));
  EXPECT_EQ(v.obstruction->right, (std::vector<std::string>{"ha1", "e1"}));
}

TEST(DpRank, LengthThreeAllPairs) {
  auto sc = build_dprank_witness(2, 3, 2, 7);
  EXPECT_TRUE(sc.passed());
  const auto& m = sc.structure;
  const auto& a = sc.sequences[0];
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) EXPECT_TRUE(types_equal(m, {a[0], a[1]}, {a[i], a[j]}).equal);
}

TEST(DpRank, ThreeSequencesAndWindowOne) {
  auto sc = build_dprank_witness(3, 2, 1, 1);
  EXPECT_TRUE(sc.passed());
  EXPECT_EQ(sc.pivot_closure.size(), 4u);
  // Without the pivot, the sequences stay mutually indiscernible.
  const auto& m = sc.structure;
  auto stripped = m.restrict(m.all() & ~m.set({"b"}));
  TypeOptions opt;
  opt.params = sc.sequences[1];
  EXPECT_TRUE(window_indiscernible(stripped, sc.sequences[0], 2, opt).indiscernible);
}

TEST(DpRank, Errors) {
  EXPECT_THROW(build_dprank_witness(1, 2, 2), Error);
  try {
    build_dprank_witness(2, 5, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeGuard);
  }
}

TEST(DpRank, Deterministic) {
  auto a = build_dprank_witness(2, 2, 2, 3), b = build_dprank_witness(2, 2, 2, 3);
  EXPECT_EQ(fingerprint(a.structure, {"a0", "b"}), fingerprint(b.structure, {"a0", "b"}));
}

TEST(NonDistal, TwoByTwo) {
  auto sc = build_nondistal_witness(2, 2, 2, 7);
  EXPECT_TRUE(sc.passed());
  const auto& m = sc.structure;
  EXPECT_EQ(delta(m, m.set({"alpha", "a0", "b", "s1"})), 2);
  auto tv = types_equal(m, {"a0", "b"}, {"b", "b0"}, over({"alpha"}));
  ASSERT_TRUE(tv.obstruction.has_value());
  EXPECT_EQ(tv.obstruction->kind, ObstructionKind::Colour);
  EXPECT_EQ(tv.obstruction->left, std::vector<std::string>{"s1"});
  EXPECT_EQ(tv.obstruction->right, std::vector<std::string>{"s2"});
}

}  // namespace
}  // namespace predim
