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

#include <random>

#include "predim/trdeg.hpp"

namespace predim {
namespace {

Rational q(const char* s) { return *parse_rational(s); }

FieldTower::Ptr two_trans() {
  return FieldTower::empty()
      ->extend(TranscendentalSpec{"t1", {q("3.141592"), q("3.141593")}})
      ->extend(TranscendentalSpec{"t2", {q("2.71"), q("2.72")}});
}

FieldTower::Ptr with_sqrt2() {
  Polynomial x = Polynomial::variable(0);
  return FieldTower::empty()->extend(AlgebraicSpec{"r", x * x - Polynomial(2), {q("1.4"), q("1.5")}});
}

TEST(Polynomial, GcdOfProducts) {
  Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
  Polynomial a = (x + y) * (x - Polynomial(1)) * y;
  Polynomial b = (x + y) * (x + Polynomial(2));
  EXPECT_EQ(gcd(a, b), x + y);
  EXPECT_EQ(gcd(a, Polynomial(3)), Polynomial(1));
  EXPECT_EQ(divide_exact(a, x + y), (x - Polynomial(1)) * y);
}

TEST(Univariate, SturmCountsRoots) {
  univariate::Coeffs p{Rational(-2), Rational(0), Rational(1)};
  EXPECT_EQ(univariate::count_roots(p, q("1.4"), q("1.5")), 1);
  EXPECT_EQ(univariate::count_roots(p, Rational(-2), Rational(2)), 2);
  EXPECT_FALSE(univariate::has_rational_root(p));
  EXPECT_TRUE(univariate::has_rational_root({Rational(-4), Rational(0), Rational(1)}));
}

TEST(FieldElement, InversesAndRoundTrip) {
  auto t = two_trans();
  auto t1 = FieldElement::generator(t, "t1");
  auto t2 = FieldElement::generator(t, "t2");
  EXPECT_TRUE((t1 + (-t1)).is_zero());
  EXPECT_EQ(t1 * (FieldElement(t, 1) / t1), FieldElement(t, 1));
  EXPECT_EQ((t1 + t2) - t2, t1);
}

TEST(FieldElement, SignByWitness) {
  auto t = two_trans();
  auto t1 = FieldElement::generator(t, "t1");
  EXPECT_EQ((t1 - t1).sign(), 0);
  EXPECT_EQ((t1 - FieldElement(t, 3)).sign(), 1);
  EXPECT_EQ((FieldElement(t, 1) / (t1 - FieldElement(t, 4))).sign(), -1);
}

TEST(FieldElement, AlgebraicReduction) {
  auto t = with_sqrt2();
  auto r = FieldElement::generator(t, "r");
  EXPECT_EQ((r * r - FieldElement(t, 2)).sign(), 0);
  EXPECT_EQ(r.sign(), 1);
  EXPECT_EQ((r - FieldElement(t, q("1.41421"))).sign(), 1);
  EXPECT_EQ((r - FieldElement(t, q("1.41422"))).sign(), -1);
  auto inv = FieldElement(t, 1) / (r + FieldElement(t, 1));
  EXPECT_EQ(inv, r - FieldElement(t, 1));
}

TEST(FieldTower, ExtensionErrors) {
  auto t = two_trans();
  try {
    t->extend(TranscendentalSpec{"t1", {Rational(0), Rational(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateName);
  }
  Polynomial x = Polynomial::variable(0);
  try {
    FieldTower::empty()->extend(AlgebraicSpec{"r", x * x - Polynomial(2), {Rational(-2), Rational(2)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadIsolation);
  }
  try {
    FieldTower::empty()->extend(AlgebraicSpec{"r", x * x - Polynomial(4), {Rational(1), Rational(3)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadMinPoly);
  }
}

TEST(FieldTower, SqrtOfTranscendental) {
  auto base = FieldTower::empty()->extend(TranscendentalSpec{"t1", {Rational(3), Rational(4)}});
  Polynomial x = Polynomial::variable(1), t1 = Polynomial::variable(0);
  auto t = base->extend(AlgebraicSpec{"r", x * x - t1, {Rational(1), Rational(2)}});
  auto r = FieldElement::generator(t, "r");
  auto e1 = FieldElement::generator(t, "t1");
  EXPECT_EQ(trdeg({r}), 1u);
  EXPECT_EQ((r * r - e1).sign(), 0);
  EXPECT_EQ(trdeg({r, e1}), 1u);
  auto inv = FieldElement(t, 1) / r;
  EXPECT_EQ(inv * r, FieldElement(t, 1));
  // The old element is still valid in the extension.
  auto old = FieldElement::generator(base, "t1");
  EXPECT_EQ(old - e1, FieldElement(t, 0));
}

TEST(FieldElement, MismatchedTowers) {
  auto a = FieldTower::empty()->extend(TranscendentalSpec{"u", {Rational(0), Rational(1)}});
  auto b = FieldTower::empty()->extend(TranscendentalSpec{"v", {Rational(0), Rational(1)}});
  try {
    (void)(FieldElement::generator(a, "u") + FieldElement::generator(b, "v"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TowerMismatch);
  }
}

TEST(Trdeg, WorkedExamples) {
  auto t = two_trans();
  auto t1 = FieldElement::generator(t, "t1");
  auto t2 = FieldElement::generator(t, "t2");
  EXPECT_EQ(trdeg({}), 0u);
  EXPECT_EQ(trdeg({t1, t1 * t1 + FieldElement(t, 1)}), 1u);
  EXPECT_EQ(trdeg({t1 + t2, t1 * t2}), 2u);
  EXPECT_EQ(trdeg({t1, t2}), 2u);
}

TEST(Relations, AnnihilatorOfSum) {
  auto t = two_trans();
  auto t1 = FieldElement::generator(t, "t1");
  auto t2 = FieldElement::generator(t, "t2");
  // x = t1 + t2 over (t1, t2): X - Y0 - Y1.
  Polynomial f = annihilator({t1, t2}, t1 + t2);
  Polynomial expect = Polynomial::variable(2) - Polynomial::variable(0) - Polynomial::variable(1);
  EXPECT_EQ(f, primitive_integer(expect));
  Polynomial g = annihilator({t1}, t1 * t1);
  EXPECT_EQ(g, primitive_integer(Polynomial::variable(1) - Polynomial::variable(0, 2)));
}

// Random small elements of Q(t1, t2).
FieldElement random_element(const FieldTower::Ptr& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  auto t1 = FieldElement::generator(t, "t1");
  auto t2 = FieldElement::generator(t, "t2");
  auto poly = [&]() {
    FieldElement p(t, 0);
    for (int i = 0; i < 3; ++i) p += FieldElement(t, coef(rng)) * t1.pow(deg(rng)) * t2.pow(deg(rng));
    return p;
  };
  FieldElement den = poly();
  if (den.is_zero()) den = FieldElement(t, 1);
  return poly() / den;
}

TEST(FieldElement, FieldAxiomsOnNormalForms) {
  auto t = two_trans();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(t, rng), b = random_element(t, rng), c = random_element(t, rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(FieldElement, OrderTrichotomyAndTransitivity) {
  auto t = two_trans();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(t, rng), b = random_element(t, rng), c = random_element(t, rng);
    int ab = a.compare(b), bc = b.compare(c), ac = a.compare(c);
    EXPECT_EQ(ab, -b.compare(a));
    if (ab < 0 && bc < 0) {
      EXPECT_LT(ac, 0);
    }
    if (ab == 0) {
      EXPECT_EQ(a, b);
    }
  }
}

}  // namespace
}  // namespace predim
