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

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "predim/error.hpp"
#include "predim/interval.hpp"
#include "predim/polynomial.hpp"
#include "predim/univariate.hpp"

namespace predim {

/// A formal transcendental. Its real value is the limit of nested dyadic
/// subintervals of `witness` chosen by a bit stream derived from the name
/// and `seed`.
struct TranscendentalSpec {
  std::string name;
  Interval witness;
  std::uint64_t seed = 0;
  friend bool operator==(const TranscendentalSpec&, const TranscendentalSpec&) = default;
};

/// A root of `min_poly` inside `isolating`. Variables 0..n-1 of the
/// polynomial are the earlier generators, variable n is the new one.
struct AlgebraicSpec {
  std::string name;
  Polynomial min_poly;
  Interval isolating;
  friend bool operator==(const AlgebraicSpec&, const AlgebraicSpec&) = default;
};

using GeneratorSpec = std::variant<TranscendentalSpec, AlgebraicSpec>;

inline const std::string& generator_name(const GeneratorSpec& s) {
  return std::visit([](const auto& g) -> const std::string& { return g.name; }, s);
}

inline constexpr unsigned kDefaultPrecisionBudget = 64;

/// Immutable presentation of a finitely generated real field. Extending
/// returns a new tower; elements of a tower stay valid in every extension.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  using Ptr = std::shared_ptr<const FieldTower>;

  static Ptr empty(unsigned precision_budget = kDefaultPrecisionBudget) {
    if (precision_budget == 0) throw Error(ErrorKind::UsageError, "precision budget must be positive");
    return Ptr(new FieldTower(precision_budget));
  }

  Ptr extend(const GeneratorSpec& spec) const {
    const std::string& name = generator_name(spec);
    if (name.empty()) throw Error(ErrorKind::UsageError, "generator name is empty");
    if (find(name)) throw Error(ErrorKind::DuplicateName, "generator '" + name + "' already declared");
    std::shared_ptr<FieldTower> next(new FieldTower(budget_));
    next->parent_ = shared_from_this();
    next->gens_ = gens_;
    next->index_ = index_;
    Generator g;
    g.spec = spec;
    if (const auto* t = std::get_if<TranscendentalSpec>(&spec)) {
      if (!(t->witness.lo < t->witness.hi))
        throw Error(ErrorKind::BadIsolation, "witness interval of '" + name + "' must have positive width");
      g.stream_seed = stable_hash(name) ^ t->seed;
    } else {
      next->prepare_algebraic(std::get<AlgebraicSpec>(spec), g);
    }
    next->index_.emplace(name, next->gens_.size());
    next->gens_.push_back(std::move(g));
    if (std::holds_alternative<AlgebraicSpec>(spec)) next->certify_isolation(next->gens_.size() - 1);
    return next;
  }

  Ptr extend(const std::vector<GeneratorSpec>& specs) const {
    Ptr t = shared_from_this();
    for (const auto& s : specs) t = t->extend(s);
    return t;
  }

  std::size_t size() const { return gens_.size(); }
  unsigned precision_budget() const { return budget_; }
  const GeneratorSpec& spec(std::size_t i) const { return at(i).spec; }
  const std::string& name(std::size_t i) const { return generator_name(at(i).spec); }
  bool is_algebraic(std::size_t i) const { return std::holds_alternative<AlgebraicSpec>(at(i).spec); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Monic, reduced minimal polynomial of an algebraic generator.
  const Polynomial& min_poly(std::size_t i) const { return at(i).monic; }
  unsigned degree(std::size_t i) const { return at(i).degree; }

  /// Coefficients of the monic minimal polynomial in its own variable.
  const std::vector<Polynomial>& min_poly_coefficients(std::size_t i) const { return at(i).coeffs; }

  std::vector<std::size_t> transcendentals() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!is_algebraic(i)) out.push_back(i);
    return out;
  }

  /// True when `other`'s generators are a prefix of this tower's.
  bool extends(const FieldTower& other) const {
    if (&other == this) return true;
    if (other.gens_.size() > gens_.size()) return false;
    for (const FieldTower* p = parent_.get(); p; p = p->parent_.get())
      if (p == &other) return true;
    for (std::size_t i = 0; i < other.gens_.size(); ++i)
      if (!(other.gens_[i].spec == gens_[i].spec)) return false;
    return true;
  }

  std::string variable_name(std::size_t v) const { return v < gens_.size() ? name(v) : "x" + std::to_string(v); }

  /// Reduces modulo the minimal polynomials, last generator first.
  Polynomial reduce(const Polynomial& p) const {
    Polynomial r = p;
    for (std::size_t j = gens_.size(); j-- > 0;) {
      if (!is_algebraic(j)) continue;
      const auto& g = gens_[j];
      if (r.degree(j) < g.degree) continue;
      auto cs = r.coefficients(j);
      for (std::size_t k = cs.size(); k-- > g.degree;) {
        if (cs[k].is_zero()) continue;
        Polynomial c = std::move(cs[k]);
        cs[k] = Polynomial();
        for (std::size_t i = 0; i < g.degree; ++i) {
          if (g.coeffs[i].is_zero()) continue;
          cs[k - g.degree + i] -= c * g.coeffs[i];
        }
      }
      cs.resize(g.degree);
      r = Polynomial::from_coefficients(cs, j);
    }
    return r;
  }

  /// Enclosure of generator i after `round` refinements.
  Interval interval(std::size_t i, unsigned round) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    const auto& g = at(i);
    auto& cache = cache_[i];
    if (cache.empty()) {
      cache.push_back(is_algebraic(i) ? std::get<AlgebraicSpec>(g.spec).isolating
                                      : std::get<TranscendentalSpec>(g.spec).witness);
    }
    while (cache.size() <= round) {
      std::size_t k = cache.size();
      cache.push_back(is_algebraic(i) ? bisect_root(i, cache.back(), static_cast<unsigned>(k))
                                      : next_witness(i, cache.back(), k));
    }
    return cache[round];
  }

  Interval evaluate(const Polynomial& p, unsigned round) const {
    if (p.is_constant()) return Interval(p.constant_term());
    return p.evaluate<Interval>([&](std::size_t v, std::uint32_t e) { return interval(v, round).pow(e); });
  }

  /// Sign of p at the generators' real values, by refinement up to the
  /// budget. Callers must guarantee p is not symbolically zero.
  int sign_of(const Polynomial& p) const {
    if (p.is_zero()) return 0;
    if (p.is_constant()) return sgn(p.constant_term());
    for (unsigned k = 0; k <= budget_; ++k) {
      if (auto s = evaluate(p, k).sign(); s && *s != 0) return *s;
    }
    throw Error(ErrorKind::PrecisionExhausted,
                "sign of " + p.to_string([this](std::size_t v) { return variable_name(v); }) +
                    " undecided after " + std::to_string(budget_) + " refinement rounds");
  }

  /// Memo slot for d(generator j)/d(generator i), stored as num/den.
  std::optional<std::pair<Polynomial, Polynomial>> cached_derivative(std::size_t j, std::size_t i) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    auto it = derivative_cache_.find({j, i});
    if (it == derivative_cache_.end()) return std::nullopt;
    return it->second;
  }
  void store_derivative(std::size_t j, std::size_t i, std::pair<Polynomial, Polynomial> value) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    derivative_cache_.emplace(std::make_pair(j, i), std::move(value));
  }

  std::string describe(std::size_t i) const {
    const auto& s = spec(i);
    if (const auto* t = std::get_if<TranscendentalSpec>(&s))
      return "trans " + t->name + " witness " + t->witness.to_string();
    const auto& a = std::get<AlgebraicSpec>(s);
    return "alg " + a.name + " poly " +
           a.min_poly.to_string([this](std::size_t v) { return variable_name(v); }) + " in " +
           a.isolating.to_string();
  }

 private:
  struct Generator {
    GeneratorSpec spec;
    std::uint64_t stream_seed = 0;
    Polynomial monic;
    std::vector<Polynomial> coeffs;  // ascending, coeffs[degree] == 1
    unsigned degree = 0;
    bool rational = false;  // all coefficients in Q
    int sign_lo = 0;        // sign of min_poly left of the root
  };

  explicit FieldTower(unsigned budget) : budget_(budget) {}

  const Generator& at(std::size_t i) const {
    if (i >= gens_.size()) throw Error(ErrorKind::InvalidHandle, "generator index out of range");
    return gens_[i];
  }

  void prepare_algebraic(const AlgebraicSpec& a, Generator& g) const {
    const std::size_t v = gens_.size();
    if (a.min_poly.max_variable() > static_cast<long>(v))
      throw Error(ErrorKind::BadMinPoly, "minimal polynomial of '" + a.name + "' uses undeclared variables");
    auto cs = a.min_poly.coefficients(v);
    if (cs.size() < 2)
      throw Error(ErrorKind::BadMinPoly, "minimal polynomial of '" + a.name + "' must have positive degree");
    if (cs.size() == 2)
      throw Error(ErrorKind::BadMinPoly, "minimal polynomial of '" + a.name + "' has degree 1; use a point instead");
    if (!cs.back().is_constant())
      throw Error(ErrorKind::BadMinPoly, "leading coefficient of '" + a.name + "' must be a nonzero rational");
    if (!(a.isolating.lo < a.isolating.hi))
      throw Error(ErrorKind::BadIsolation, "isolating interval of '" + a.name + "' must have positive width");
    Rational lead = cs.back().constant_term();
    g.degree = static_cast<unsigned>(cs.size() - 1);
    g.rational = true;
    for (auto& c : cs) {
      c = reduce(c * Rational(1 / lead));
      if (!c.is_constant()) g.rational = false;
    }
    g.coeffs = cs;
    g.monic = Polynomial::from_coefficients(cs, v);
    if (g.rational) {
      univariate::Coeffs u;
      for (const auto& c : cs) u.push_back(c.constant_term());
      if (univariate::gcd(u, univariate::derivative(u)).size() > 1)
        throw Error(ErrorKind::BadMinPoly, "minimal polynomial of '" + a.name + "' is not squarefree");
      if (univariate::has_rational_root(u))
        throw Error(ErrorKind::BadMinPoly, "minimal polynomial of '" + a.name + "' has a rational root");
    }
  }

  // Coefficient enclosures of generator i's minimal polynomial.
  std::vector<Interval> coefficient_intervals(std::size_t i, unsigned round) const {
    std::vector<Interval> out;
    for (const auto& c : gens_[i].coeffs) out.push_back(evaluate(c, round));
    return out;
  }

  static Interval horner(const std::vector<Interval>& cs, const Interval& x) {
    Interval r(Rational(0));
    for (std::size_t k = cs.size(); k-- > 0;) r = r * x + cs[k];
    return r;
  }

  static Interval horner_derivative(const std::vector<Interval>& cs, const Interval& x) {
    Interval r(Rational(0));
    for (std::size_t k = cs.size(); k-- > 1;) r = r * x + Interval::scale(cs[k], Rational(static_cast<long>(k)));
    return r;
  }

  void certify_isolation(std::size_t i) {
    auto& g = gens_[i];
    const auto& a = std::get<AlgebraicSpec>(g.spec);
    const Interval& iso = a.isolating;
    if (g.rational) {
      univariate::Coeffs u;
      for (const auto& c : g.coeffs) u.push_back(c.constant_term());
      int lo = sgn(univariate::eval(u, iso.lo));
      int hi = sgn(univariate::eval(u, iso.hi));
      if (lo == 0 || hi == 0)
        throw Error(ErrorKind::BadIsolation, "isolating interval of '" + a.name + "' has a root at an endpoint");
      int roots = univariate::count_roots(u, iso.lo, iso.hi);
      if (roots != 1 || lo == hi)
        throw Error(ErrorKind::BadIsolation, "isolating interval of '" + a.name + "' contains " +
                                                 std::to_string(roots) + " roots");
      g.sign_lo = lo;
      return;
    }
    for (unsigned k = 0; k <= budget_; ++k) {
      auto cs = coefficient_intervals(i, k);
      auto lo = horner(cs, Interval(iso.lo)).sign();
      auto hi = horner(cs, Interval(iso.hi)).sign();
      if (lo && hi && *lo != 0 && *hi != 0) {
        if (*lo == *hi)
          throw Error(ErrorKind::BadIsolation, "no sign change on isolating interval of '" + a.name + "'");
        if (monotone(cs, iso)) {
          g.sign_lo = *lo;
          return;
        }
      }
    }
    throw Error(ErrorKind::BadIsolation, "could not certify a single root of '" + a.name + "'");
  }

  // Derivative keeps one sign on the interval, checked on up to 64 pieces.
  static bool monotone(const std::vector<Interval>& cs, const Interval& iso) {
    for (unsigned pieces = 1; pieces <= 64; pieces *= 2) {
      std::optional<int> common;
      bool ok = true;
      for (unsigned j = 0; j < pieces && ok; ++j) {
        Interval piece(iso.lo + iso.width() * Rational(j, pieces), iso.lo + iso.width() * Rational(j + 1, pieces));
        auto s = horner_derivative(cs, piece).sign();
        if (!s || *s == 0 || (common && *common != *s)) ok = false;
        else common = s;
      }
      if (ok) return true;
    }
    return false;
  }

  Interval next_witness(std::size_t i, const Interval& prev, std::size_t k) const {
    auto& bits = bits_[i];
    auto state = bits_state_.try_emplace(i, gens_[i].stream_seed).first;
    while (bits.size() < k) {
      std::uint64_t word = splitmix64(state->second);
      for (int b = 0; b < 64; ++b) bits.push_back(static_cast<bool>((word >> b) & 1ULL));
    }
    Rational mid = prev.midpoint();
    return bits[k - 1] ? Interval(mid, prev.hi) : Interval(prev.lo, mid);
  }

  Interval bisect_root(std::size_t i, const Interval& prev, unsigned round) const {
    const auto& g = gens_[i];
    auto cs = g.rational ? coefficient_intervals(i, 0) : coefficient_intervals(i, round);
    for (Rational f : {Rational(1, 2), Rational(3, 8), Rational(5, 8)}) {
      Rational x = prev.lo + prev.width() * f;
      auto s = horner(cs, Interval(x)).sign();
      if (!s || *s == 0) continue;
      if (*s == g.sign_lo) return Interval(x, prev.hi);
      return Interval(prev.lo, x);
    }
    return prev;
  }

  unsigned budget_;
  Ptr parent_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<std::size_t, std::vector<Interval>> cache_;
  mutable std::map<std::size_t, std::vector<bool>> bits_;
  mutable std::map<std::size_t, std::uint64_t> bits_state_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::pair<Polynomial, Polynomial>> derivative_cache_;
};

}  // namespace predim
