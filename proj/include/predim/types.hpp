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

// Equality of types of tuples, decided on closures: two tuples have the
// same type when the order-preserving bijection of their closures extends
// the tuple map and preserves colours and all algebraic relations. Order
// is compared among named points only.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "predim/predimension.hpp"

namespace predim {

enum class ObstructionKind { Length, EqualityPattern, ClosureSize, TrdegProfile, Colour, Relation, Order };

inline std::string_view to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::Length: return "Length";
    case ObstructionKind::EqualityPattern: return "EqualityPattern";
    case ObstructionKind::ClosureSize: return "ClosureSize";
    case ObstructionKind::TrdegProfile: return "TrdegProfile";
    case ObstructionKind::Colour: return "Colour";
    case ObstructionKind::Relation: return "Relation";
    case ObstructionKind::Order: return "Order";
  }
  return "Unknown";
}

struct Obstruction {
  ObstructionKind kind;
  std::string detail;
  std::vector<std::string> left;   // points on the first side
  std::vector<std::string> right;  // corresponding points on the second side
};

struct TypeOptions {
  std::vector<std::string> params;  // appended to both tuples
  std::size_t profile_cap = 3;
  unsigned relation_degree = kDefaultRelationDegree;
  bool fast_path = true;  // skip closures when everything lies in p
  Limits limits;
};

/// Closure data in value order. Equal fingerprints mean the order map of
/// the closures is a partial isomorphism extending the tuple map.
struct TypeFingerprint {
  std::vector<std::string> points;          // closure, sorted by value
  std::vector<std::size_t> tuple_positions;  // position of each tuple entry
  std::vector<bool> colours;
  std::vector<std::pair<std::uint64_t, std::size_t>> trdeg_profile;  // (position mask, trdeg)
  std::vector<std::size_t> basis;                                  // greedy, positions
  std::vector<std::pair<std::size_t, Polynomial>> relations;        // position, relation over basis
  bool fast = false;

  bool operator==(const TypeFingerprint& o) const {
    return tuple_positions == o.tuple_positions && colours == o.colours && trdeg_profile == o.trdeg_profile &&
           basis == o.basis && relations == o.relations;
  }
};

struct TypeVerdict {
  bool equal = false;
  std::vector<std::pair<std::string, std::string>> bijection;
  std::optional<Obstruction> obstruction;
  bool fast_path = false;
};

namespace detail {

inline std::vector<std::size_t> tuple_indices(const ColouredStructure& m, const std::vector<std::string>& tuple,
                                              const std::vector<std::string>& params) {
  std::vector<std::size_t> out;
  for (const auto& n : tuple) out.push_back(m.index(n));
  for (const auto& n : params) out.push_back(m.index(n));
  return out;
}

inline PointSet as_set(const std::vector<std::size_t>& idx) {
  PointSet s = 0;
  for (auto i : idx) s |= singleton(i);
  return s;
}

inline bool in_colours(const ColouredStructure& m, const std::vector<std::size_t>& idx) {
  for (auto i : idx)
    if (!m.coloured(i)) return false;
  return true;
}

// Greedy basis of the listed points, in list order.
inline std::vector<std::size_t> greedy_basis(const ColouredStructure& m, const std::vector<std::size_t>& pts) {
  std::vector<std::size_t> basis;
  PointSet s = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (m.trdeg(s | singleton(pts[k])) > m.trdeg(s)) {
      s |= singleton(pts[k]);
      basis.push_back(k);
    }
  }
  return basis;
}

inline Polynomial relation(const ColouredStructure& m, const std::vector<std::size_t>& pts,
                           const std::vector<std::size_t>& basis, std::size_t x, unsigned degree) {
  std::vector<FieldElement> b;
  for (auto k : basis) b.push_back(m.point(pts[k]).value);
  return annihilator(b, m.point(x).value, degree);
}

}  // namespace detail

/// Fingerprint of a listed point set; `pts` must be in value order.
inline TypeFingerprint fingerprint_of(const ColouredStructure& m, const std::vector<std::size_t>& pts,
                                      const std::vector<std::size_t>& tuple, const TypeOptions& opt) {
  TypeFingerprint fp;
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    pos[pts[k]] = k;
    fp.points.push_back(m.point(pts[k]).name);
    fp.colours.push_back(m.coloured(pts[k]));
  }
  for (auto i : tuple) fp.tuple_positions.push_back(pos.at(i));
  const std::size_t n = pts.size();
  if (n <= 63) {
    // Subsets of size <= cap, enumerated by position mask.
    std::function<void(std::size_t, std::uint64_t, std::size_t)> rec = [&](std::size_t from, std::uint64_t mask,
                                                                           std::size_t size) {
      if (size > 0) {
        PointSet s = 0;
        for (std::size_t k = 0; k < n; ++k)
          if ((mask >> k) & 1ULL) s |= singleton(pts[k]);
        fp.trdeg_profile.emplace_back(mask, m.trdeg(s));
      }
      if (size == opt.profile_cap) return;
      for (std::size_t k = from; k < n; ++k) rec(k + 1, mask | (std::uint64_t{1} << k), size + 1);
    };
    rec(0, 0, 0);
  }
  fp.basis = detail::greedy_basis(m, pts);
  std::size_t b = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (b < fp.basis.size() && fp.basis[b] == k) {
      ++b;
      continue;
    }
    fp.relations.emplace_back(k, detail::relation(m, pts, fp.basis, pts[k], opt.relation_degree));
  }
  return fp;
}

inline TypeFingerprint fingerprint(const ColouredStructure& m, const std::vector<std::string>& tuple,
                                   const TypeOptions& opt = {}) {
  auto idx = detail::tuple_indices(m, tuple, opt.params);
  PointSet s = detail::as_set(idx);
  bool fast = opt.fast_path && detail::in_colours(m, idx) && in_class(m);
  PointSet cl = fast ? s : closure(m, s, opt.limits);
  auto fp = fingerprint_of(m, m.sorted(cl), idx, opt);
  fp.fast = fast;
  return fp;
}

namespace detail {

// Colour- and relation-preserving bijection between the closures that
// extends the tuple map, ignoring order.
inline std::optional<std::vector<std::size_t>> unordered_match(const ColouredStructure& ma,
                                                               const std::vector<std::size_t>& ca,
                                                               const ColouredStructure& mb,
                                                               const std::vector<std::size_t>& cb,
                                                               const std::vector<std::size_t>& ta,
                                                               const std::vector<std::size_t>& tb,
                                                               const TypeOptions& opt) {
  const std::size_t n = ca.size();
  std::vector<std::size_t> g(n, n);
  std::vector<bool> used(n, false);
  std::map<std::size_t, std::size_t> pa, pb;
  for (std::size_t k = 0; k < n; ++k) pa[ca[k]] = k, pb[cb[k]] = k;
  for (std::size_t k = 0; k < ta.size(); ++k) {
    std::size_t x = pa.at(ta[k]), y = pb.at(tb[k]);
    if (g[x] != n && g[x] != y) return std::nullopt;
    if (used[y] && g[x] != y) return std::nullopt;
    g[x] = y;
    used[y] = true;
  }
  auto relations_ok = [&]() {
    // Basis of the first side, transported.
    std::vector<std::size_t> basis = greedy_basis(ma, ca);
    PointSet bs = 0;
    for (auto k : basis) bs |= singleton(cb[g[k]]);
    if (mb.trdeg(bs) != basis.size() || mb.trdeg(as_set(cb)) != basis.size()) return false;
    std::vector<std::size_t> img;
    for (auto k : basis) img.push_back(g[k]);
    std::size_t b = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (b < basis.size() && basis[b] == k) {
        ++b;
        continue;
      }
      if (!(relation(ma, ca, basis, ca[k], opt.relation_degree) ==
            relation(mb, cb, img, cb[g[k]], opt.relation_degree)))
        return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == n) return relations_ok();
    if (g[k] != n) return assign(k + 1);
    bool alg_a = ma.trdeg(singleton(ca[k])) == 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || ma.coloured(ca[k]) != mb.coloured(cb[y])) continue;
      if (alg_a != (mb.trdeg(singleton(cb[y])) == 0)) continue;
      g[k] = y;
      used[y] = true;
      if (assign(k + 1)) return true;
      used[y] = false;
      g[k] = n;
    }
    return false;
  };
  for (std::size_t k = 0; k < n; ++k)
    if (g[k] != n && ma.coloured(ca[k]) != mb.coloured(cb[g[k]])) return std::nullopt;
  if (!assign(0)) return std::nullopt;
  return g;
}

inline std::string order_word(bool less) { return less ? "<" : ">"; }

}  // namespace detail

/// Type equality for tuples of two (possibly different) structures.
inline TypeVerdict types_equal(const ColouredStructure& ma, const std::vector<std::string>& a,
                               const ColouredStructure& mb, const std::vector<std::string>& b,
                               const TypeOptions& opt = {}) {
  TypeVerdict v;
  if (a.size() != b.size()) {
    v.obstruction = Obstruction{ObstructionKind::Length, "tuples differ in length", a, b};
    return v;
  }
  auto ia = detail::tuple_indices(ma, a, opt.params);
  auto ib = detail::tuple_indices(mb, b, opt.params);
  for (std::size_t i = 0; i < ia.size(); ++i) {
    for (std::size_t j = i + 1; j < ia.size(); ++j) {
      if ((ia[i] == ia[j]) != (ib[i] == ib[j])) {
        v.obstruction = Obstruction{ObstructionKind::EqualityPattern, "equality pattern differs",
                                    {ma.point(ia[i]).name, ma.point(ia[j]).name},
                                    {mb.point(ib[i]).name, mb.point(ib[j]).name}};
        return v;
      }
    }
  }
  bool fast = opt.fast_path && detail::in_colours(ma, ia) && detail::in_colours(mb, ib) && in_class(ma) &&
              in_class(mb);
  v.fast_path = fast;
  PointSet sa = detail::as_set(ia), sb = detail::as_set(ib);
  PointSet cla = fast ? sa : closure(ma, sa, opt.limits);
  PointSet clb = fast ? sb : closure(mb, sb, opt.limits);
  auto ca = ma.sorted(cla), cb = mb.sorted(clb);

  if (ca.size() != cb.size()) {
    // Look for the missing counterpart of an extra closure point: same
    // relation over the tuple, but a different colour.
    bool a_bigger = ca.size() > cb.size();
    const auto& big = a_bigger ? ma : mb;
    const auto& small = a_bigger ? mb : ma;
    const auto& tb_big = a_bigger ? ia : ib;
    const auto& tb_small = a_bigger ? ib : ia;
    PointSet big_cl = a_bigger ? cla : clb;
    PointSet small_cl = a_bigger ? clb : cla;
    Obstruction ob{ObstructionKind::ClosureSize,
                   "closures have " + std::to_string(ca.size()) + " and " + std::to_string(cb.size()) + " points",
                   ma.names(cla), mb.names(clb)};
    auto basis_big = detail::greedy_basis(big, tb_big);
    auto basis_small = detail::greedy_basis(small, tb_small);
    if (basis_big == basis_small) {
      PointSet tuple_big = detail::as_set(tb_big), tuple_small = detail::as_set(tb_small);
      for_each_member(big_cl & ~tuple_big, [&](std::size_t x) {
        if (ob.kind != ObstructionKind::ClosureSize) return;
        if (!big.algebraic_over(singleton(x), tuple_big)) return;
        Polynomial rel = detail::relation(big, tb_big, basis_big, x, opt.relation_degree);
        for (std::size_t y = 0; y < small.size(); ++y) {
          if (contains(small_cl, y) || !small.algebraic_over(singleton(y), tuple_small)) continue;
          if (!(detail::relation(small, tb_small, basis_small, y, opt.relation_degree) == rel)) continue;
          if (small.coloured(y) != big.coloured(x)) {
            std::string xa = big.point(x).name, yb = small.point(y).name;
            ob = Obstruction{ObstructionKind::Colour,
                             "'" + xa + "' is " + (big.coloured(x) ? "coloured" : "uncoloured") +
                                 " but its counterpart '" + yb + "' is " + (small.coloured(y) ? "coloured" : "uncoloured"),
                             {a_bigger ? xa : yb}, {a_bigger ? yb : xa}};
          }
          return;
        }
      });
    }
    v.obstruction = ob;
    return v;
  }

  TypeOptions o = opt;
  auto fa = fingerprint_of(ma, ca, ia, o);
  auto fb = fingerprint_of(mb, cb, ib, o);
  if (fa == fb) {
    v.equal = true;
    for (std::size_t k = 0; k < ca.size(); ++k) v.bijection.emplace_back(ma.point(ca[k]).name, mb.point(cb[k]).name);
    return v;
  }
  // Diagnose: if some colour- and relation-preserving bijection exists the
  // order is to blame.
  if (auto g = detail::unordered_match(ma, ca, mb, cb, ia, ib, opt)) {
    for (std::size_t x = 0; x < ca.size(); ++x) {
      for (std::size_t y = x + 1; y < ca.size(); ++y) {
        if ((*g)[x] > (*g)[y]) {
          std::string ax = ma.point(ca[x]).name, ay = ma.point(ca[y]).name;
          std::string bx = mb.point(cb[(*g)[x]]).name, by = mb.point(cb[(*g)[y]]).name;
          v.obstruction = Obstruction{ObstructionKind::Order,
                                      ax + " < " + ay + " but " + bx + " > " + by, {ax, ay}, {bx, by}};
          return v;
        }
      }
    }
  }
  for (std::size_t k = 0; k < fa.tuple_positions.size(); ++k) {
    if (fa.tuple_positions[k] != fb.tuple_positions[k]) {
      v.obstruction = Obstruction{ObstructionKind::Order, "tuple entry " + std::to_string(k) + " sits at a different position",
                                  {ma.point(ia[k]).name}, {mb.point(ib[k]).name}};
      return v;
    }
  }
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (fa.colours[k] != fb.colours[k]) {
      v.obstruction = Obstruction{ObstructionKind::Colour, "colour differs at position " + std::to_string(k),
                                  {ma.point(ca[k]).name}, {mb.point(cb[k]).name}};
      return v;
    }
  }
  if (fa.trdeg_profile != fb.trdeg_profile) {
    for (std::size_t k = 0; k < fa.trdeg_profile.size(); ++k) {
      if (fa.trdeg_profile[k] == fb.trdeg_profile[k]) continue;
      std::vector<std::string> l, r;
      for (std::size_t j = 0; j < ca.size(); ++j) {
        if ((fa.trdeg_profile[k].first >> j) & 1ULL) {
          l.push_back(ma.point(ca[j]).name);
          r.push_back(mb.point(cb[j]).name);
        }
      }
      v.obstruction = Obstruction{ObstructionKind::TrdegProfile, "transcendence degrees differ", l, r};
      return v;
    }
  }
  std::vector<std::string> l, r;
  for (std::size_t k = 0; k < fa.relations.size() && k < fb.relations.size(); ++k) {
    if (fa.relations[k] == fb.relations[k]) continue;
    l.push_back(ma.point(ca[fa.relations[k].first]).name);
    r.push_back(mb.point(cb[fb.relations[k].first]).name);
    break;
  }
  v.obstruction = Obstruction{ObstructionKind::Relation, "algebraic relations differ", l, r};
  return v;
}

inline TypeVerdict types_equal(const ColouredStructure& m, const std::vector<std::string>& a,
                               const std::vector<std::string>& b, const TypeOptions& opt = {}) {
  return types_equal(m, a, m, b, opt);
}

struct IndiscernibilityVerdict {
  bool indiscernible = true;
  std::size_t tuples_checked = 0;
  std::vector<std::string> first, second;  // failing pair of tuples
  std::optional<Obstruction> obstruction;
};

/// Every increasing tuple of length <= window has the type of the first
/// increasing tuple of that length (over `opt.params`).
inline IndiscernibilityVerdict window_indiscernible(const ColouredStructure& m, const std::vector<std::string>& seq,
                                                   std::size_t window, const TypeOptions& opt = {}) {
  IndiscernibilityVerdict v;
  for (std::size_t len = 1; len <= window && len <= seq.size(); ++len) {
    std::vector<std::size_t> pick(len);
    for (std::size_t i = 0; i < len; ++i) pick[i] = i;
    std::vector<std::string> first;
    for (auto i : pick) first.push_back(seq[i]);
    while (true) {
      std::size_t j = len;
      while (j > 0 && pick[j - 1] == seq.size() - len + j - 1) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < len; ++t) pick[t] = pick[t - 1] + 1;
      std::vector<std::string> cur;
      for (auto i : pick) cur.push_back(seq[i]);
      auto tv = types_equal(m, first, cur, opt);
      ++v.tuples_checked;
      if (!tv.equal) {
        v.indiscernible = false;
        v.first = first;
        v.second = cur;
        v.obstruction = tv.obstruction;
        return v;
      }
    }
  }
  return v;
}

}  // namespace predim
