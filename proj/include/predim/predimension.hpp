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

// Predimension calculus on finite coloured structures.
//
// Adding an uncoloured point never lowers delta, so A is closed in B
// exactly when the coloured points of B - A are algebraically independent
// over A. Everything below reduces to rank computations on that basis.

#pragma once

#include <string>
#include <vector>

#include "predim/structure.hpp"

namespace predim {

inline constexpr std::size_t kDefaultSubsetBound = 20;

struct Limits {
  std::size_t subset_bound = kDefaultSubsetBound;
};

inline void guard(std::size_t n, const Limits& limits, const char* what) {
  if (n > limits.subset_bound)
    throw Error(ErrorKind::SizeGuard, std::string(what) + ": " + std::to_string(n) +
                                          " points exceed the subset bound " +
                                          std::to_string(limits.subset_bound));
}

inline long delta(const ColouredStructure& m, PointSet a) {
  return static_cast<long>(m.trdeg(a)) - cardinality(a & m.colours());
}

inline long delta_rel(const ColouredStructure& m, PointSet c, PointSet a) {
  return delta(m, c | a) - delta(m, a);
}

/// Whether the points of p are algebraically independent over `over`.
inline bool independent_over(const ColouredStructure& m, PointSet p, PointSet over) {
  p &= ~over;
  return m.trdeg(over | p) - m.trdeg(over) == static_cast<std::size_t>(cardinality(p));
}

/// An inclusion-minimal subset of p that is dependent over `over`.
/// Requires p to be dependent over `over`.
inline PointSet circuit_over(const ColouredStructure& m, PointSet p, PointSet over) {
  PointSet s = p & ~over;
  for_each_member(s, [&](std::size_t i) {
    PointSet smaller = s & ~singleton(i);
    if (!independent_over(m, smaller, over)) s = smaller;
  });
  return s;
}

inline bool is_closed(const ColouredStructure& m, PointSet a, PointSet b, const Limits& limits = {}) {
  if (!is_subset(a, b)) throw Error(ErrorKind::UsageError, "is_closed requires A to be a subset of B");
  guard(static_cast<std::size_t>(cardinality(b & ~a)), limits, "is_closed");
  return independent_over(m, b & ~a & m.colours(), a);
}

struct ClassVerdict {
  bool ok = true;
  PointSet violation = 0;  // minimal by size, then lexicographic index order
};

inline bool in_class(const ColouredStructure& m) {
  return m.trdeg(m.colours()) == static_cast<std::size_t>(cardinality(m.colours()));
}

/// A violation always contains a dependent set of coloured points, and the
/// smallest violations are exactly the smallest circuits among them.
inline ClassVerdict check_class_membership(const ColouredStructure& m, const Limits& limits = {}) {
  if (in_class(m)) return {};
  std::vector<std::size_t> cols;
  for_each_member(m.colours(), [&](std::size_t i) { cols.push_back(i); });
  guard(cols.size(), limits, "check_class_membership");
  for (std::size_t k = 1; k <= cols.size(); ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      PointSet s = 0;
      for (auto i : pick) s |= singleton(cols[i]);
      if (m.trdeg(s) < k) return {false, s};
      std::size_t j = k;
      while (j > 0 && pick[j - 1] == cols.size() - k + j - 1) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < k; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  throw Error(ErrorKind::Internal, "class violation without a dependent coloured set");
}

inline void require_class(const ColouredStructure& m, const Limits& limits) {
  if (in_class(m)) return;
  auto v = check_class_membership(m, limits);
  throw Error(ErrorKind::NotInClass, "structure has a subset of negative predimension", m.names(v.violation));
}

/// Least closed superset: adjoin circuits of coloured points until the
/// remaining coloured points are independent.
inline PointSet closure(const ColouredStructure& m, PointSet a, const Limits& limits = {}) {
  guard(static_cast<std::size_t>(cardinality(m.all() & ~a)), limits, "closure");
  require_class(m, limits);
  PointSet b = a;
  while (true) {
    PointSet rest = m.colours() & ~b;
    if (independent_over(m, rest, b)) return b;
    b |= circuit_over(m, rest, b);
  }
}

inline long dim(const ColouredStructure& m, PointSet a, const Limits& limits = {}) {
  return delta(m, closure(m, a, limits));
}

inline bool in_CL(const ColouredStructure& m, std::size_t x, PointSet a, const Limits& limits = {}) {
  if (contains(a, x)) return true;
  return dim(m, a | singleton(x), limits) == dim(m, a, limits);
}

struct BasisCore {
  PointSet basis = 0;
  PointSet core = 0;
};

/// Greedy basis in declaration order, and its closure.
inline BasisCore basis_and_core(const ColouredStructure& m, const Limits& limits = {}) {
  guard(m.size(), limits, "basis_and_core");
  require_class(m, limits);
  PointSet basis = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.trdeg(basis | singleton(i)) > m.trdeg(basis)) basis |= singleton(i);
  PointSet core = closure(m, basis, limits);
  if (core != (basis | m.colours()))
    throw Error(ErrorKind::Internal, "core differs from basis plus coloured points", m.names(core));
  return {basis, core};
}

}  // namespace predim
