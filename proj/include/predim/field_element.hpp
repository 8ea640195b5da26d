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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "predim/field_tower.hpp"

namespace predim {

/// An element num/den of a tower's field. `num` is reduced modulo the
/// minimal polynomials; `den` only involves transcendental generators, is
/// monic and shares no factor with the coefficients of `num`.
class FieldElement {
 public:
  using TowerPtr = FieldTower::Ptr;

  FieldElement() : tower_(rational_tower()), den_(1) {}
  FieldElement(TowerPtr tower, const Rational& c) : tower_(std::move(tower)), num_(c), den_(1) {}
  FieldElement(TowerPtr tower, long c) : FieldElement(std::move(tower), Rational(c)) {}

  static FieldElement generator(TowerPtr tower, std::size_t i) {
    if (i >= tower->size()) throw Error(ErrorKind::InvalidHandle, "generator index out of range");
    return from_polynomial(std::move(tower), Polynomial::variable(i));
  }

  static FieldElement generator(TowerPtr tower, std::string_view name) {
    auto i = tower->find(name);
    if (!i) throw Error(ErrorKind::UnknownIdentifier, "unknown generator '" + std::string(name) + "'");
    return generator(std::move(tower), *i);
  }

  static FieldElement from_polynomial(TowerPtr tower, const Polynomial& p) {
    if (p.max_variable() >= static_cast<long>(tower->size()))
      throw Error(ErrorKind::InvalidHandle, "polynomial uses variables outside the tower");
    FieldElement e;
    e.num_ = tower->reduce(p);
    e.den_ = Polynomial(1);
    e.tower_ = std::move(tower);
    return e;
  }

  const TowerPtr& tower() const { return tower_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> rational_value() const {
    if (!is_rational()) return std::nullopt;
    return num_.constant_term() / den_.constant_term();
  }

  /// Same element viewed in an extension of its tower.
  FieldElement lift(const TowerPtr& bigger) const {
    if (!bigger->extends(*tower_)) throw Error(ErrorKind::TowerMismatch, "target tower does not extend the element's tower");
    FieldElement e = *this;
    e.tower_ = bigger;
    return e;
  }

  friend FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    r.num_ = -r.num_;
    return r;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    auto t = common_tower(a, b);
    if (a.den_ == b.den_) return make(t, a.num_ + b.num_, a.den_);
    return make(t, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    auto t = common_tower(a, b);
    if (a.is_zero() || b.is_zero()) return FieldElement(t, 0);
    return make(t, t->reduce(a.num_ * b.num_), a.den_ * b.den_);
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    auto t = common_tower(a, b);
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    auto [u, n] = invert(*t, b.num_);
    return make(t, t->reduce(a.num_ * b.den_ * u), a.den_ * n);
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  FieldElement pow(int n) const {
    if (n < 0) return FieldElement(tower_, 1) / pow(-n);
    FieldElement r(tower_, 1), base = *this;
    for (unsigned k = static_cast<unsigned>(n); k; k >>= 1U) {
      if (k & 1U) r *= base;
      if (k > 1) base *= base;
    }
    return r;
  }

  int sign() const {
    if (is_zero()) return 0;
    return tower_->sign_of(num_) * tower_->sign_of(den_);
  }

  /// <0, 0, >0 like a three-way comparison.
  int compare(const FieldElement& o) const { return (*this - o).sign(); }

  /// Enclosure of the value after `round` refinements (den must exclude 0).
  Interval enclosure(unsigned round) const {
    Interval n = tower_->evaluate(num_, round);
    Interval d = tower_->evaluate(den_, round);
    if (d.contains_zero()) return Interval(Rational(-1) << 64, Rational(1) << 64);
    Rational a = 1 / d.lo, b = 1 / d.hi;
    return n * Interval(std::min(a, b), std::max(a, b));
  }

  /// d/dt for the transcendental generator with tower index `var`.
  FieldElement partial(std::size_t var) const {
    if (tower_->is_algebraic(var)) throw Error(ErrorKind::UsageError, "derivation variable must be transcendental");
    FieldElement dn = poly_derivative(tower_, num_, var, static_cast<std::size_t>(-1));
    if (den_.is_constant()) return make(tower_, dn.num_, dn.den_ * den_);
    FieldElement d = from_polynomial(tower_, den_);
    FieldElement n = from_polynomial(tower_, num_);
    FieldElement dd = from_polynomial(tower_, den_.derivative(var));
    return (dn * d - n * dd) / (d * d);
  }

  /// Partial derivatives with respect to every transcendental generator.
  std::vector<FieldElement> gradient() const {
    std::vector<FieldElement> g;
    for (auto v : tower_->transcendentals()) g.push_back(partial(v));
    return g;
  }

  std::string to_string() const {
    auto names = [this](std::size_t v) { return tower_->variable_name(v); };
    std::string n = num_.to_string(names);
    if (den_ == Polynomial(1)) return n;
    return "(" + n + ")/(" + den_.to_string(names) + ")";
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    common_tower(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static const TowerPtr& rational_tower() {
    static const TowerPtr t = FieldTower::empty();
    return t;
  }

  static TowerPtr common_tower(const FieldElement& a, const FieldElement& b) {
    if (a.tower_ == b.tower_) return a.tower_;
    if (b.tower_->extends(*a.tower_)) return b.tower_;
    if (a.tower_->extends(*b.tower_)) return a.tower_;
    throw Error(ErrorKind::TowerMismatch, "elements belong to unrelated towers");
  }

  static FieldElement make(const TowerPtr& t, Polynomial num, Polynomial den) {
    FieldElement e;
    e.tower_ = t;
    if (num.is_zero()) {
      e.den_ = Polynomial(1);
      return e;
    }
    if (!den.is_constant()) {
      // Group by algebraic monomial; each group coefficient lies in Q[T].
      std::map<Exponents, Polynomial> groups;
      for (const auto& term : num.terms()) {
        Exponents alg, tr;
        for (std::size_t v = 0; v < term.exponents.size(); ++v) {
          auto& target = t->is_algebraic(v) ? alg : tr;
          target.resize(v + 1, 0);
          target[v] = term.exponents[v];
        }
        trim(alg);
        trim(tr);
        groups[alg] += Polynomial::monomial(tr, term.coefficient);
      }
      Polynomial g = den;
      for (const auto& [m, c] : groups) {
        g = gcd(g, c);
        if (g.is_constant()) break;
      }
      if (!g.is_constant()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
      }
    }
    Rational lc = den.leading_coefficient();
    if (lc != 1) {
      Rational inv = 1 / lc;
      num = num * inv;
      den = den * inv;
    }
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
  }

  // Determinant of a square matrix over the tower's quotient ring, with its
  // row-0 cofactors.
  static Polynomial ring_det(const FieldTower& t, const std::vector<std::vector<Polynomial>>& m,
                             std::vector<Polynomial>* cofactors) {
    const std::size_t n = m.size();
    if (n == 1) {
      if (cofactors) *cofactors = {Polynomial(1)};
      return m[0][0];
    }
    Polynomial det;
    if (cofactors) cofactors->assign(n, Polynomial());
    for (std::size_t c = 0; c < n; ++c) {
      bool needed = cofactors || !m[0][c].is_zero();
      if (!needed) continue;
      std::vector<std::vector<Polynomial>> minor;
      for (std::size_t r = 1; r < n; ++r) {
        std::vector<Polynomial> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != c) row.push_back(m[r][k]);
        minor.push_back(std::move(row));
      }
      Polynomial cof = ring_det(t, minor, nullptr);
      if (c % 2 == 1) cof = -cof;
      if (!m[0][c].is_zero()) det += t.reduce(m[0][c] * cof);
      if (cofactors) (*cofactors)[c] = std::move(cof);
    }
    return det;
  }

  // Returns (U, N) with p * U == N modulo the tower and N in Q[T].
  static std::pair<Polynomial, Polynomial> invert(const FieldTower& t, const Polynomial& p) {
    long j = -1;
    for (long v = p.max_variable(); v >= 0; --v) {
      if (t.is_algebraic(static_cast<std::size_t>(v)) && p.uses(static_cast<std::size_t>(v))) {
        j = v;
        break;
      }
    }
    if (j < 0) return {Polynomial(1), p};
    const std::size_t var = static_cast<std::size_t>(j);
    const unsigned d = t.degree(var);
    std::vector<std::vector<Polynomial>> m(d, std::vector<Polynomial>(d));
    for (unsigned col = 0; col < d; ++col) {
      auto cs = t.reduce(p * Polynomial::variable(var, col)).coefficients(var);
      for (unsigned row = 0; row < d && row < cs.size(); ++row) m[row][col] = cs[row];
    }
    // u = adj(m) e0, i.e. the row-0 cofactors, so that m u = det e0.
    std::vector<Polynomial> cof;
    Polynomial det = ring_det(t, m, &cof);
    if (det.is_zero())
      throw Error(ErrorKind::DivisionByZero, "zero divisor: minimal polynomial of '" + t.name(var) + "' is reducible");
    Polynomial u;
    for (unsigned i = 0; i < d; ++i) u += cof[i] * Polynomial::variable(var, i);
    u = t.reduce(u);
    auto [u2, n] = invert(t, det);
    return {t.reduce(u * u2), n};
  }

  // d(p)/d(t_var), skipping the generator `skip` (used for implicit
  // differentiation of a minimal polynomial in its own variable).
  static FieldElement poly_derivative(const TowerPtr& t, const Polynomial& p, std::size_t var, std::size_t skip) {
    FieldElement result(t, 0);
    long top = p.max_variable();
    for (long v = 0; v <= top; ++v) {
      std::size_t sv = static_cast<std::size_t>(v);
      if (sv == skip || !p.uses(sv)) continue;
      if (!t->is_algebraic(sv)) {
        if (sv == var) result += from_polynomial(t, p.derivative(sv));
        continue;
      }
      result += from_polynomial(t, p.derivative(sv)) * generator_derivative(t, sv, var);
    }
    return result;
  }

  static FieldElement generator_derivative(const TowerPtr& t, std::size_t j, std::size_t var) {
    if (auto c = t->cached_derivative(j, var)) return make(t, c->first, c->second);
    const Polynomial& m = t->min_poly(j);
    FieldElement numer = poly_derivative(t, m, var, j);
    FieldElement value;
    if (numer.is_zero()) {
      value = FieldElement(t, 0);
    } else {
      FieldElement dm = from_polynomial(t, m.derivative(j));
      value = -numer / dm;
    }
    t->store_derivative(j, var, {value.num_, value.den_});
    return value;
  }

  TowerPtr tower_;
  Polynomial num_;
  Polynomial den_;
};

}  // namespace predim
