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

// Transcendence degree by Jacobian rank, and Q-linear relations between
// field elements.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "predim/field_element.hpp"

namespace predim {

using Matrix = std::vector<std::vector<FieldElement>>;

/// Rank over the tower's function field; zero tests are symbolic.
inline std::size_t jacobian_rank(Matrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      FieldElement f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (rows[rank][k].is_zero()) continue;
        rows[r][k] -= f * rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t trdeg(const std::vector<FieldElement>& elems) {
  if (elems.empty()) return 0;
  auto tower = elems.front().tower();
  for (const auto& e : elems) {
    if (e.tower() != tower && !tower->extends(*e.tower())) {
      if (e.tower()->extends(*tower)) tower = e.tower();
      else throw Error(ErrorKind::TowerMismatch, "trdeg over unrelated towers");
    }
  }
  Matrix rows;
  for (const auto& e : elems) rows.push_back(e.lift(tower).gradient());
  return jacobian_rank(std::move(rows));
}

/// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = 1 / a[row][c];
    for (std::size_t k = c; k < cols; ++k) a[row][k] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  return pivots;
}

/// Coordinates of the values over Q, as columns of a rational matrix.
inline std::vector<std::vector<Rational>> rational_coordinates(const std::vector<FieldElement>& values) {
  Polynomial common(1);
  for (const auto& v : values) {
    if (v.denominator().is_constant()) continue;
    common = divide_exact(common * v.denominator(), gcd(common, v.denominator()));
  }
  std::map<Exponents, std::size_t> index;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Polynomial p = values[i].numerator() * divide_exact(common, values[i].denominator());
    for (const auto& t : p.terms()) {
      auto [it, fresh] = index.emplace(t.exponents, rows.size());
      if (fresh) rows.emplace_back(values.size(), Rational(0));
      rows[it->second][i] = t.coefficient;
    }
  }
  return rows;
}

/// Basis of {c in Q^n : sum c_i v_i = 0}; the first vector has the
/// smallest possible last nonzero index.
inline std::vector<std::vector<Rational>> linear_relations(const std::vector<FieldElement>& values) {
  const std::size_t n = values.size();
  auto a = rational_coordinates(values);
  auto pivots = rref(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// All exponent vectors in `vars` variables with total degree exactly d.
inline void exponents_of_degree(std::size_t vars, unsigned d, Exponents& cur, std::vector<Exponents>& out) {
  if (cur.size() + 1 == vars) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = d + 1; k-- > 0;) {
    cur.push_back(k);
    exponents_of_degree(vars, d - k, cur, out);
    cur.pop_back();
  }
}

inline constexpr unsigned kDefaultRelationDegree = 6;

/// Canonical least polynomial F (grlex-least leading monomial, primitive
/// integer coefficients, positive leading coefficient) with F(basis, x) = 0.
/// Variable i stands for basis[i], variable basis.size() for x.
inline Polynomial annihilator(const std::vector<FieldElement>& basis, const FieldElement& x,
                              unsigned max_degree = kDefaultRelationDegree) {
  const std::size_t vars = basis.size() + 1;
  std::vector<FieldElement> gens = basis;
  gens.push_back(x);
  std::vector<Exponents> monomials{Exponents(vars, 0)};
  std::map<Exponents, FieldElement> value{{Exponents(vars, 0), FieldElement(x.tower(), 1)}};
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::vector<Exponents> layer;
    Exponents cur;
    exponents_of_degree(vars, d, cur, layer);
    // Ascending grlex within the layer (variable 0 most significant).
    std::reverse(layer.begin(), layer.end());
    for (const auto& e : layer) {
      std::size_t v = 0;
      while (e[v] == 0) ++v;
      Exponents prev = e;
      --prev[v];
      value.emplace(e, value.at(prev) * gens[v]);
      monomials.push_back(e);
    }
    std::vector<FieldElement> vals;
    for (const auto& m : monomials) vals.push_back(value.at(m));
    auto kernel = linear_relations(vals);
    if (kernel.empty()) continue;
    Polynomial f;
    for (std::size_t i = 0; i < monomials.size(); ++i)
      if (kernel.front()[i] != 0) f += Polynomial::monomial(monomials[i], kernel.front()[i]);
    return primitive_integer(f);
  }
  throw Error(ErrorKind::RelationSearchExhausted,
              "no relation of degree <= " + std::to_string(max_degree) + " for " + x.to_string());
}

}  // namespace predim
