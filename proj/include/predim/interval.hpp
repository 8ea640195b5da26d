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

#include <algorithm>
#include <optional>
#include <string>

#include "predim/rational.hpp"

namespace predim {

/// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  explicit Interval(const Rational& point) : lo(point), hi(point) {}
  Interval(const Rational& l, const Rational& h) : lo(l), hi(h) {}

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }

  /// Sign of every point in the interval, or nullopt when it straddles 0.
  std::optional<int> sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (lo == 0 && hi == 0) return 0;
    return std::nullopt;
  }

  /// Outward rounding to a dyadic grid, keeping endpoint sizes bounded.
  Interval rounded(unsigned bits) const { return {floor_dyadic(lo, bits), ceil_dyadic(hi, bits)}; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    if (a.lo == a.hi) return scale(b, a.lo);
    if (b.lo == b.hi) return scale(a, b.lo);
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }

  static Interval scale(const Interval& a, const Rational& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
  }

  Interval pow(unsigned n) const {
    if (n == 0) return Interval(Rational(1));
    Rational a, b;
    mpq_class base_lo = lo, base_hi = hi;
    auto ipow = [](Rational x, unsigned k) {
      Rational r(1);
      while (k) {
        if (k & 1U) r *= x;
        k >>= 1U;
        if (k) x *= x;
      }
      return r;
    };
    a = ipow(base_lo, n);
    b = ipow(base_hi, n);
    if (n % 2 == 1 || lo >= 0) return {std::min(a, b), std::max(a, b)};
    if (hi <= 0) return {std::min(a, b), std::max(a, b)};
    return {Rational(0), std::max(a, b)};
  }

  std::string to_string() const { return "[" + lo.get_str() + ", " + hi.get_str() + "]"; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

}  // namespace predim
