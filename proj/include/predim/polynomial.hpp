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
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "predim/error.hpp"
#include "predim/rational.hpp"

namespace predim {

/// Exponent vector indexed by variable; trailing zeros are always trimmed so
/// that a polynomial in fewer variables stays valid in a larger ring.
using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t exponent_at(const Exponents& e, std::size_t v) {
  return v < e.size() ? e[v] : 0;
}

inline void trim(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

inline std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded lexicographic comparison; variable 0 is the most significant.
inline int grlex_compare(const Exponents& a, const Exponents& b) {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto ea = exponent_at(a, v);
    auto eb = exponent_at(b, v);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return grlex_compare(a, b) > 0;
  }
};

/// Sparse multivariate polynomial over Q with terms kept in decreasing
/// graded-lex order. Equal polynomials have identical term lists.
class Polynomial {
 public:
  struct Term {
    Exponents exponents;
    Rational coefficient;
    friend bool operator==(const Term& a, const Term& b) {
      return a.exponents == b.exponents && a.coefficient == b.coefficient;
    }
  };

  Polynomial() = default;
  explicit Polynomial(const Rational& c) {
    if (c != 0) terms_.push_back({{}, c});
  }
  explicit Polynomial(long c) : Polynomial(Rational(c)) {}

  static Polynomial variable(std::size_t v, std::uint32_t power = 1) {
    Exponents e(v + 1, 0);
    e[v] = power;
    trim(e);
    return monomial(std::move(e), Rational(1));
  }

  static Polynomial monomial(Exponents e, const Rational& c) {
    Polynomial p;
    trim(e);
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponents.empty());
  }
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().exponents.empty()) return terms_.back().coefficient;
    return Rational(0);
  }
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coefficient() const { return terms_.front().coefficient; }

  std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& t : terms_) n = std::max(n, t.exponents.size());
    return n;
  }

  std::uint32_t degree(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent_at(t.exponents, v));
    return d;
  }

  std::uint64_t total_degree() const {
    return terms_.empty() ? 0 : predim::total_degree(terms_.front().exponents);
  }

  bool uses(std::size_t v) const { return degree(v) > 0; }

  /// Highest variable index that occurs, or -1 for constants.
  long max_variable() const {
    long m = -1;
    for (const auto& t : terms_) m = std::max<long>(m, static_cast<long>(t.exponents.size()) - 1);
    return m;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = add(*this, o, 1); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add(*this, o, -1); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, -1); }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Rational& c) {
    if (c == 0) return Polynomial();
    Polynomial r = a;
    for (auto& t : r.terms_) t.coefficient *= c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    if (a.is_constant()) return b * a.terms_[0].coefficient;
    if (b.is_constant()) return a * b.terms_[0].coefficient;
    std::map<Exponents, Rational, GrlexGreater> acc;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Exponents e(std::max(ta.exponents.size(), tb.exponents.size()), 0);
        for (std::size_t v = 0; v < e.size(); ++v)
          e[v] = exponent_at(ta.exponents, v) + exponent_at(tb.exponents, v);
        acc[std::move(e)] += ta.coefficient * tb.coefficient;
      }
    }
    return from_map(acc);
  }

  Polynomial pow(unsigned n) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (n) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return result;
  }

  Polynomial derivative(std::size_t v) const {
    std::map<Exponents, Rational, GrlexGreater> acc;
    for (const auto& t : terms_) {
      auto e = exponent_at(t.exponents, v);
      if (e == 0) continue;
      Exponents ne = t.exponents;
      ne[v] = e - 1;
      trim(ne);
      acc[std::move(ne)] += t.coefficient * e;
    }
    return from_map(acc);
  }

  /// Coefficients with respect to `v`: result[k] is the coefficient of v^k.
  std::vector<Polynomial> coefficients(std::size_t v) const {
    std::vector<std::map<Exponents, Rational, GrlexGreater>> acc(degree(v) + 1);
    for (const auto& t : terms_) {
      auto e = exponent_at(t.exponents, v);
      Exponents ne = t.exponents;
      if (v < ne.size()) ne[v] = 0;
      trim(ne);
      acc[e][std::move(ne)] += t.coefficient;
    }
    std::vector<Polynomial> out;
    out.reserve(acc.size());
    for (auto& m : acc) out.push_back(from_map(m));
    if (is_zero()) out.assign(1, Polynomial());
    return out;
  }

  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t v) {
    Polynomial r;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      r += coeffs[k] * variable(v, static_cast<std::uint32_t>(k));
    }
    return r;
  }

  /// Replaces variable v by `value`.
  Polynomial substitute(std::size_t v, const Polynomial& value) const {
    auto cs = coefficients(v);
    Polynomial r;
    for (std::size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
    return r;
  }

  /// Renames variable i to map[i]; variables beyond map.size() keep their index.
  Polynomial rename(const std::vector<std::size_t>& map) const {
    std::map<Exponents, Rational, GrlexGreater> acc;
    for (const auto& t : terms_) {
      Exponents ne;
      for (std::size_t v = 0; v < t.exponents.size(); ++v) {
        if (t.exponents[v] == 0) continue;
        std::size_t target = v < map.size() ? map[v] : v;
        if (ne.size() <= target) ne.resize(target + 1, 0);
        ne[target] += t.exponents[v];
      }
      trim(ne);
      acc[std::move(ne)] += t.coefficient;
    }
    return from_map(acc);
  }

  /// Evaluates with `power(v, e)` supplying v^e in the target ring T, which
  /// must be constructible from Rational and support + and *.
  template <class T, class PowerFn>
  T evaluate(PowerFn&& power) const {
    T sum{Rational(0)};
    for (const auto& t : terms_) {
      T term{t.coefficient};
      for (std::size_t v = 0; v < t.exponents.size(); ++v) {
        if (t.exponents[v] == 0) continue;
        term = term * power(v, t.exponents[v]);
      }
      sum = sum + term;
    }
    return sum;
  }

  std::string to_string(const std::function<std::string(std::size_t)>& name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coefficient;
      bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool has_vars = !t.exponents.empty();
      if (!has_vars || c != 1) {
        os << c.get_str();
        if (has_vars) os << "*";
      }
      bool first_var = true;
      for (std::size_t v = 0; v < t.exponents.size(); ++v) {
        if (t.exponents[v] == 0) continue;
        if (!first_var) os << "*";
        first_var = false;
        os << name(v);
        if (t.exponents[v] > 1) os << "^" << t.exponents[v];
      }
    }
    return os.str();
  }

  std::string to_string() const {
    return to_string([](std::size_t v) { return "x" + std::to_string(v); });
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Total order (grlex on terms, then coefficients) for use as a map key.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = grlex_compare(a.terms_[i].exponents, b.terms_[i].exponents);
      if (c != 0) return c < 0;
      if (a.terms_[i].coefficient != b.terms_[i].coefficient)
        return a.terms_[i].coefficient < b.terms_[i].coefficient;
    }
    return a.terms_.size() < b.terms_.size();
  }

 private:
  static Polynomial from_map(const std::map<Exponents, Rational, GrlexGreater>& acc) {
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (const auto& [e, c] : acc)
      if (c != 0) p.terms_.push_back({e, c});
    return p;
  }

  static Polynomial add(const Polynomial& a, const Polynomial& b, int sign) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == a.terms_.size()) cmp = -1;
      else if (j == b.terms_.size()) cmp = 1;
      else cmp = grlex_compare(a.terms_[i].exponents, b.terms_[j].exponents);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        Term t = b.terms_[j++];
        if (sign < 0) t.coefficient = -t.coefficient;
        r.terms_.push_back(std::move(t));
      } else {
        Rational c = a.terms_[i].coefficient;
        if (sign > 0) c += b.terms_[j].coefficient;
        else c -= b.terms_[j].coefficient;
        if (c != 0) r.terms_.push_back({a.terms_[i].exponents, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Division and gcd over Q[x0, x1, ...].

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coefficient());
}

/// Scales to integer coefficients with unit content and a positive leading
/// coefficient.
inline Polynomial primitive_integer(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_coefficient() < 0) scale = -scale;
  return p * scale;
}

/// Exact division; throws Internal if `b` does not divide `a`.
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (b.is_constant()) return a * Rational(1 / b.leading_coefficient());
  Polynomial rem = a;
  Polynomial quotient;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    Exponents e(std::max(lr.exponents.size(), lb.exponents.size()), 0);
    for (std::size_t v = 0; v < e.size(); ++v) {
      auto er = exponent_at(lr.exponents, v);
      auto eb = exponent_at(lb.exponents, v);
      if (er < eb) throw Error(ErrorKind::Internal, "inexact polynomial division");
      e[v] = er - eb;
    }
    Polynomial t = Polynomial::monomial(std::move(e), lr.coefficient / lb.coefficient);
    quotient += t;
    rem -= t * b;
  }
  return quotient;
}

/// Pseudo-remainder of a by b viewed as univariate polynomials in v.
inline Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v) {
  auto A = a.coefficients(v);
  auto B = b.coefficients(v);
  std::size_t n = B.size() - 1;
  const Polynomial lc = B[n];
  auto is_zero_vec = [](const std::vector<Polynomial>& c) {
    return c.empty() || (c.size() == 1 && c[0].is_zero());
  };
  while (!is_zero_vec(A) && A.size() - 1 >= n) {
    std::size_t k = A.size() - 1 - n;
    Polynomial t = A.back();
    for (auto& c : A) c = c * lc;
    for (std::size_t i = 0; i <= n; ++i) A[i + k] -= t * B[i];
    A.pop_back();
    while (A.size() > 1 && A.back().is_zero()) A.pop_back();
  }
  if (A.empty()) return Polynomial();
  return Polynomial::from_coefficients(A, v);
}

inline Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Gcd of the coefficients of p with respect to v (monic).
inline Polynomial content(const Polynomial& p, std::size_t v) {
  Polynomial g;
  for (const auto& c : p.coefficients(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? monic(c) : gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

inline Polynomial primitive_part(const Polynomial& p, std::size_t v) {
  if (p.is_zero()) return p;
  return divide_exact(p, content(p, v));
}

/// Monic gcd over Q, by recursive primitive pseudo-remainder sequences.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return monic(a);
  long va = a.max_variable();
  long vb = b.max_variable();
  std::size_t v = static_cast<std::size_t>(std::max(va, vb));
  if (!a.uses(v)) return gcd(a, content(b, v));
  if (!b.uses(v)) return gcd(content(a, v), b);
  Polynomial ca = content(a, v);
  Polynomial cb = content(b, v);
  Polynomial g_content = gcd(ca, cb);
  Polynomial pa = primitive_integer(divide_exact(a, ca));
  Polynomial pb = primitive_integer(divide_exact(b, cb));
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.degree(v) == 0) {
      pa = Polynomial(1);
      break;
    }
    Polynomial r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    pb = r.is_zero() ? r : primitive_integer(primitive_part(r, v));
  }
  return monic(g_content * primitive_part(pa, v));
}

}  // namespace predim
