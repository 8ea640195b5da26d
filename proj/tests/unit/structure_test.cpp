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

#include "predim/generic_builder.hpp"

namespace predim {
namespace {

using T = FieldTower::Ptr;

FieldElement g(const T& t, const char* n) { return FieldElement::generator(t, n); }
FieldElement c(const T& t, long v) { return FieldElement(t, v); }

T trans(std::initializer_list<std::pair<const char*, long>> gens) {
  T t = FieldTower::empty();
  for (auto [n, lo] : gens) t = t->extend(TranscendentalSpec{n, {Rational(lo), Rational(lo + 1)}});
  return t;
}

template <class F>
void expect_error(ErrorKind k, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(k);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), k) << e.what();
  }
}

// Brute-force oracle: A closed in B iff delta(C/A) >= 0 for all A <= C <= B.
bool closed_brute(const ColouredStructure& m, PointSet a, PointSet b) {
  PointSet extra = b & ~a;
  for (PointSet s = extra;; s = (s - 1) & extra) {
    if (delta_rel(m, s, a) < 0) return false;
    if (s == 0) break;
  }
  return true;
}

TEST(Delta, WorkedExamples) {
  T t = trans({{"t", 3}});
  auto sq = FieldTower::empty()->extend(
      AlgebraicSpec{"r", Polynomial::variable(0) * Polynomial::variable(0) - Polynomial(2), {Rational(1), Rational(2)}});
  ColouredStructure u(t, {{"x", g(t, "t"), false}});
  ColouredStructure p(t, {{"x", g(t, "t"), true}});
  ColouredStructure s(sq, {{"x", g(sq, "r"), true}});
  EXPECT_EQ(delta(u, u.all()), 1);
  EXPECT_EQ(delta(p, p.all()), 0);
  EXPECT_EQ(delta(s, s.all()), -1);
  auto v = check_class_membership(s);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(s.names(v.violation), std::vector<std::string>{"x"});
}

TEST(Delta, Relative) {
  T t = trans({{"t", 3}, {"u", 7}});
  ColouredStructure m(t, {{"a", g(t, "t"), false}, {"f", g(t, "u"), false}, {"c", g(t, "t") * c(t, 2), true}});
  PointSet a = m.set({"a"});
  EXPECT_EQ(delta_rel(m, a, a), 0);
  EXPECT_EQ(delta_rel(m, m.set({"f"}), a), 1);
  EXPECT_EQ(delta_rel(m, m.set({"c"}), a), -1);
}

TEST(Closed, WorkedExamples) {
  T t = trans({{"t", 3}, {"u", 7}});
  ColouredStructure m(t, {{"a", g(t, "t"), false}, {"c", g(t, "t") + c(t, 1), true}, {"f", g(t, "u"), false}});
  PointSet a = m.set({"a"});
  EXPECT_TRUE(is_closed(m, a, a));
  EXPECT_FALSE(is_closed(m, a, m.set({"a", "c"})));
  EXPECT_TRUE(is_closed(m, a, m.set({"a", "f"})));
  EXPECT_TRUE(closed_brute(m, a, m.set({"a", "f"})));
  expect_error(ErrorKind::UsageError, [&] { is_closed(m, m.set({"c"}), a); });
  expect_error(ErrorKind::SizeGuard, [&] { is_closed(m, 0, m.all(), Limits{1}); });
}

TEST(Closure, WorkedExamples) {
  T t = trans({{"t", 3}});
  ColouredStructure m(t, {{"t", g(t, "t"), false}, {"c", g(t, "t") + c(t, 1), true}});
  EXPECT_EQ(closure(m, m.set({"t"})), m.all());
  EXPECT_EQ(closure(m, m.all()), m.all());
  EXPECT_EQ(closure(m, m.set({"c"})), m.set({"c"}));
  EXPECT_EQ(dim(m, 0), 0);
  EXPECT_EQ(dim(m, m.set({"t"})), 0);
  EXPECT_TRUE(in_CL(m, 0, m.set({"t"})));
  auto bc = basis_and_core(m);
  EXPECT_EQ(cardinality(bc.basis), 1);
  EXPECT_EQ(bc.core, bc.basis | m.colours());
}

TEST(Class, WorkedExamples) {
  T t = trans({{"al", 1}, {"a0", 3}, {"b", 5}});
  ColouredStructure m(t, {{"al", g(t, "al"), false},
                          {"a0", g(t, "a0"), false},
                          {"b", g(t, "b"), false},
                          {"s", g(t, "al") + g(t, "a0") + g(t, "b"), true}});
  EXPECT_TRUE(check_class_membership(m).ok);
  EXPECT_EQ(delta(m, m.all()), 2);
  ColouredStructure ind(t, {{"x", g(t, "al"), true}, {"y", g(t, "a0"), true}, {"z", g(t, "b"), true}});
  EXPECT_TRUE(check_class_membership(ind).ok);
  auto bc = basis_and_core(ind);
  EXPECT_EQ(bc.basis, ind.all());
  EXPECT_EQ(bc.core, ind.all());
}

TEST(Structure, Invariants) {
  T t = trans({{"t", 3}});
  expect_error(ErrorKind::InvariantViolation, [&] { ColouredStructure(t, {{"q", c(t, 2), true}}); });
  expect_error(ErrorKind::InvariantViolation,
               [&] { ColouredStructure(t, {{"a", g(t, "t"), false}, {"b", g(t, "t"), false}}); });
  expect_error(ErrorKind::DuplicateName, [&] { ColouredStructure(t, {{"a", g(t, "t"), false}, {"a", c(t, 1), false}}); });
  ColouredStructure m(t, {{"a", g(t, "t"), false}, {"z", c(t, 0), false}});
  EXPECT_EQ(m.order(), (std::vector<std::size_t>{1, 0}));
  expect_error(ErrorKind::InvalidHandle, [&] { m.index("nope"); });
}

TEST(Decompose, WorkedExamples) {
  T t = trans({{"t", 3}, {"u", 7}});
  t = t->extend(AlgebraicSpec{"r",
                              Polynomial::variable(2) * Polynomial::variable(2) - Polynomial::variable(0),
                              {Rational(1), Rational(2)}});
  ColouredStructure m(t, {{"a", c(t, 0), false},
                          {"t", g(t, "t"), false},
                          {"r", g(t, "r"), false},
                          {"c", g(t, "u"), true}});
  PointSet a = m.set({"a"});
  EXPECT_TRUE(decompose(m, a, a).steps.empty());
  auto one = decompose(m, a, m.set({"a", "c"}));
  ASSERT_EQ(one.steps.size(), 1u);
  EXPECT_EQ(one.steps[0].kind, StepKind::IndependentColoured);
  auto two = decompose(m, a, m.set({"a", "t", "r"}));
  ASSERT_EQ(two.steps.size(), 2u);
  EXPECT_EQ(two.steps[0].point, "t");
  EXPECT_EQ(two.steps[0].kind, StepKind::IndependentUncoloured);
  EXPECT_EQ(two.steps[1].kind, StepKind::AlgebraicUncoloured);
}

TEST(ClassifyMinimal, WorkedExamples) {
  T t = trans({{"t", 3}, {"u", 7}, {"v", 11}});
  ColouredStructure m(t, {{"t", g(t, "t"), false},
                          {"x", g(t, "t") * c(t, 3), false},
                          {"c", g(t, "u"), true},
                          {"d", g(t, "v"), true}});
  PointSet a = m.set({"t"});
  EXPECT_EQ(classify_minimal(m, a, m.set({"t", "x"})), StepKind::AlgebraicUncoloured);
  EXPECT_EQ(classify_minimal(m, a, m.set({"t", "c"})), StepKind::IndependentColoured);
  try {
    classify_minimal(m, a, m.set({"t", "c", "d"}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMinimal);
    EXPECT_EQ(e.witness().size(), 2u);
  }
}

TEST(Amalgam, WorkedExamples) {
  T q = FieldTower::empty();
  ColouredStructure base(q, {});
  T tl = q->extend(TranscendentalSpec{"u", {Rational(1), Rational(2)}});
  T tr = q->extend(TranscendentalSpec{"v", {Rational(5), Rational(6)}});
  ColouredStructure left(tl, {{"u", g(tl, "u"), true}});
  ColouredStructure right(tr, {{"v", g(tr, "v"), true}});
  auto am = free_amalgam(base, left, right);
  EXPECT_EQ(am.product.size(), 2u);
  EXPECT_EQ(delta(am.product, am.product.all()), 0);
  EXPECT_TRUE(am.certificates.left_closed);
  EXPECT_TRUE(am.certificates.right_closed);

  auto same = free_amalgam(left, left, left);
  EXPECT_EQ(same.product.size(), 1u);

  T t0 = trans({{"t", 3}});
  ColouredStructure b0(t0, {{"t", g(t0, "t"), false}});
  T l0 = t0->extend(TranscendentalSpec{"x", {Rational(10), Rational(11)}});
  T r0 = t0->extend(TranscendentalSpec{"y", {Rational(20), Rational(21)}});
  ColouredStructure l(l0, {{"t", g(l0, "t"), false}, {"c", g(l0, "x"), true}});
  ColouredStructure r(r0, {{"t", g(r0, "t"), false}, {"s", g(r0, "y"), false}});
  auto am2 = free_amalgam(b0, l, r);
  EXPECT_EQ(am2.product.trdeg(am2.product.all()), 3u);
  EXPECT_EQ(am2.product.names(am2.product.colours()), std::vector<std::string>{"c"});
}

TEST(Amalgam, SameGeneratorNamesStayIndependent) {
  T q = FieldTower::empty();
  T tl = q->extend(TranscendentalSpec{"x", {Rational(1), Rational(2)}});
  ColouredStructure side(tl, {{"p", g(tl, "x"), true}});
  auto am = free_amalgam(ColouredStructure(q, {}), side, side);
  EXPECT_EQ(am.product.size(), 2u);
  EXPECT_EQ(am.product.trdeg(am.product.all()), 2u);
  EXPECT_FALSE(am.certificates.notes.empty());
}

TEST(Builder, RealizeAndDensify) {
  T t = FieldTower::empty();
  ColouredStructure m0(t, {{"zero", c(t, 0), false}, {"one", c(t, 1), false}});
  auto s0 = initial_state(m0, 7);
  auto same = realize_extension(s0, {"zero", "one"}, m0);
  EXPECT_EQ(same.stage_index, 1u);
  EXPECT_EQ(same.current.size(), 2u);

  T t1 = t->extend(TranscendentalSpec{"y", {Rational(1, 4), Rational(1, 2)}});
  ColouredStructure b(t1, {{"zero", c(t1, 0), false}, {"one", c(t1, 1), false}, {"y", g(t1, "y"), true}});
  auto s1 = realize_extension(s0, {"zero", "one"}, b);
  const auto& m1 = s1.current;
  std::size_t y = m1.index(s1.history.back().added.at(0));
  EXPECT_TRUE(m1.coloured(y));
  EXPECT_GT(m1.point(y).value.sign(), 0);
  EXPECT_LT((m1.point(y).value - c(m1.tower(), 1)).sign(), 0);
  EXPECT_TRUE(s1.history.back().image_closed);

  auto d = insert_density_witnesses(s0, "zero", "one", 2, true);
  EXPECT_EQ(d.current.size(), 4u);
  PointSet w = d.current.set(d.history.back().added);
  EXPECT_EQ(delta(d.current, w), 0);
  EXPECT_TRUE(d.history.back().image_closed);
  auto rep = check_axioms(d);
  EXPECT_TRUE(rep.class_ok);
  ASSERT_FALSE(rep.intervals.empty());
  EXPECT_EQ(rep.intervals[0].alpha, "zero");
  EXPECT_EQ(rep.intervals[0].coloured_depth, 2u);
  EXPECT_EQ(rep.intervals[0].coloured_status, "present");

  auto u = insert_density_witnesses(s0, "zero", "one", 1, false);
  EXPECT_EQ(dim(u.current, u.current.all()), dim(s0.current, s0.current.all()) + 1);
  EXPECT_EQ(insert_density_witnesses(s0, "zero", "one", 0, true).current.size(), 2u);
  expect_error(ErrorKind::UsageError, [&] { insert_density_witnesses(s0, "one", "zero", 1, true); });
}

TEST(Builder, AlgebraicRealization) {
  T t = trans({{"a", 3}});
  ColouredStructure m(t, {{"a", g(t, "a"), false}});
  auto s = initial_state(m);
  T t2 = t->extend(AlgebraicSpec{"r",
                                 Polynomial::variable(1) * Polynomial::variable(1) - Polynomial::variable(0),
                                 {Rational(1), Rational(3)}});
  ColouredStructure b(t2, {{"a", g(t2, "a"), false}, {"r", g(t2, "r"), false}});
  auto s2 = realize_extension(s, {"a"}, b);
  EXPECT_EQ(s2.current.size(), 2u);
  EXPECT_TRUE(s2.history.back().image_closed);
  EXPECT_TRUE(s2.history.back().previous_closed);
}

TEST(Builder, CorruptFixture) {
  auto sq = FieldTower::empty()->extend(
      AlgebraicSpec{"r", Polynomial::variable(0) * Polynomial::variable(0) - Polynomial(2), {Rational(1), Rational(2)}});
  GenericModelState s;
  s.current = ColouredStructure(sq, {{"x", g(sq, "r"), true}});
  auto rep = check_axioms(s);
  EXPECT_FALSE(rep.class_ok);
  EXPECT_EQ(rep.violation, std::vector<std::string>{"x"});
  EXPECT_TRUE(check_axioms(GenericModelState{}).class_ok);
}

TEST(Types, WorkedExamples) {
  T t = trans({{"a0", 3}, {"a1", 30}});
  auto make = [&](bool c1) {
    return ColouredStructure(t, {{"a0", g(t, "a0"), false},
                                 {"c0", g(t, "a0") + c(t, 5), true},
                                 {"a1", g(t, "a1"), false},
                                 {"c1", g(t, "a1") + c(t, 5), c1}});
  };
  auto m = make(true);
  auto same = types_equal(m, {"a0"}, {"a0"});
  EXPECT_TRUE(same.equal);
  auto v = types_equal(m, {"a0"}, {"a1"});
  EXPECT_TRUE(v.equal);
  auto n = make(false);
  auto w = types_equal(n, {"a0"}, {"a1"});
  EXPECT_FALSE(w.equal);
  ASSERT_TRUE(w.obstruction.has_value());
  EXPECT_EQ(w.obstruction->kind, ObstructionKind::Colour);
}

TEST(Audit, IdenticalAndDiffering) {
  T t = trans({{"x", 3}, {"y", 7}});
  ColouredStructure m(t, {{"x", g(t, "x"), true}, {"y", g(t, "y"), false}});
  ColouredStructure n(t, {{"x", g(t, "x"), false}, {"y", g(t, "y"), false}});
  auto a = initial_state(m), b = initial_state(m), d = initial_state(n);
  EXPECT_TRUE(back_and_forth_audit(a, b, 0).passed);
  auto ok = back_and_forth_audit(a, b, 4);
  EXPECT_TRUE(ok.passed);
  auto bad = back_and_forth_audit(a, d, 4);
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.failed_round.has_value());
  EXPECT_EQ(bad.rounds[*bad.failed_round].picked, "x");
}

TEST(Audit, RealizesMissingPoints) {
  T t = trans({{"x", 3}, {"y", 7}});
  ColouredStructure m(t, {{"x", g(t, "x"), false}, {"y", g(t, "y"), true}, {"z", g(t, "x") + c(t, 1), false}});
  ColouredStructure n(t, {{"x", g(t, "x"), false}});
  auto rep = back_and_forth_audit(initial_state(m), initial_state(n), 5);
  EXPECT_TRUE(rep.passed);
  bool realized = false;
  for (const auto& r : rep.rounds) realized = realized || r.realized;
  EXPECT_TRUE(realized);
}

}  // namespace
}  // namespace predim
