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
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "predim/trdeg.hpp"

namespace predim {

struct Point {
  std::string name;
  FieldElement value;
  bool coloured = false;
};

/// A subset of a structure's points as a bitmask over declaration indices.
using PointSet = std::uint64_t;

inline int cardinality(PointSet s) { return std::popcount(s); }
inline bool contains(PointSet s, std::size_t i) { return (s >> i) & 1ULL; }
inline PointSet singleton(std::size_t i) { return PointSet{1} << i; }
inline bool is_subset(PointSet a, PointSet b) { return (a & ~b) == 0; }

template <class F>
void for_each_member(PointSet s, F&& f) {
  while (s) {
    std::size_t i = static_cast<std::size_t>(std::countr_zero(s));
    f(i);
    s &= s - 1;
  }
}

/// Finite coloured ordered configuration over one tower. Immutable; the
/// rank cache is shared between copies.
class ColouredStructure {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  ColouredStructure() : ColouredStructure(FieldTower::empty(), {}) {}

  ColouredStructure(FieldTower::Ptr tower, std::vector<Point> points)
      : tower_(std::move(tower)), points_(std::move(points)), cache_(std::make_shared<Cache>()) {
    if (points_.size() > kMaxPoints)
      throw Error(ErrorKind::SizeGuard, "structures hold at most 64 points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto& p = points_[i];
      if (p.name.empty()) throw Error(ErrorKind::UsageError, "point name is empty");
      if (!index_.emplace(p.name, i).second)
        throw Error(ErrorKind::DuplicateName, "point '" + p.name + "' declared twice", {p.name});
      p.value = p.value.lift(tower_);
      if (p.coloured && p.value.is_rational())
        throw Error(ErrorKind::InvariantViolation,
                    "rational constants are never coloured (point '" + p.name + "')", {p.name});
      if (p.coloured) colours_ |= singleton(i);
    }
    order_.resize(points_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return points_[a].value.compare(points_[b].value) < 0; });
    for (std::size_t k = 1; k < order_.size(); ++k) {
      const auto& a = points_[order_[k - 1]];
      const auto& b = points_[order_[k]];
      if (a.value == b.value)
        throw Error(ErrorKind::InvariantViolation,
                    "points '" + a.name + "' and '" + b.name + "' have equal values", {a.name, b.name});
    }
    rank_.resize(points_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) rank_[order_[k]] = k;
  }

  const FieldTower::Ptr& tower() const { return tower_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const {
    if (i >= points_.size()) throw Error(ErrorKind::InvalidHandle, "point index out of range");
    return points_[i];
  }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorKind::InvalidHandle, "unknown point '" + name + "'", {name});
    return *i;
  }

  PointSet all() const { return points_.size() == 64 ? ~PointSet{0} : (PointSet{1} << points_.size()) - 1; }
  PointSet colours() const { return colours_; }
  bool coloured(std::size_t i) const { return point(i).coloured; }

  PointSet set(const std::vector<std::string>& names) const {
    PointSet s = 0;
    for (const auto& n : names) s |= singleton(index(n));
    return s;
  }

  /// Names in declaration order.
  std::vector<std::string> names(PointSet s) const {
    std::vector<std::string> out;
    for_each_member(s, [&](std::size_t i) { out.push_back(points_[i].name); });
    return out;
  }

  /// Indices sorted by value.
  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t rank(std::size_t i) const { return rank_.at(i); }

  std::vector<std::size_t> sorted(PointSet s) const {
    std::vector<std::size_t> out;
    for (auto i : order_)
      if (contains(s, i)) out.push_back(i);
    return out;
  }

  std::vector<FieldElement> values(PointSet s) const {
    std::vector<FieldElement> out;
    for_each_member(s, [&](std::size_t i) { out.push_back(points_[i].value); });
    return out;
  }

  /// Transcendence degree of the values in s (memoized).
  std::size_t trdeg(PointSet s) const {
    if (s == 0) return 0;
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->rank.find(s);
      if (it != cache_->rank.end()) return it->second;
    }
    Matrix rows;
    for_each_member(s, [&](std::size_t i) { rows.push_back(gradient(i)); });
    std::size_t r = jacobian_rank(std::move(rows));
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->rank.emplace(s, r);
    return r;
  }

  /// True when every member of s is algebraic over `over`.
  bool algebraic_over(PointSet s, PointSet over) const { return trdeg(s | over) == trdeg(over); }

  /// Sub-structure on s, keeping declaration order and the tower.
  ColouredStructure restrict(PointSet s) const {
    std::vector<Point> pts;
    for_each_member(s, [&](std::size_t i) { pts.push_back(points_[i]); });
    return ColouredStructure(tower_, std::move(pts));
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::unordered_map<PointSet, std::size_t> rank;
    std::unordered_map<std::size_t, std::vector<FieldElement>> gradients;
  };

  std::vector<FieldElement> gradient(std::size_t i) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->gradients.find(i);
      if (it != cache_->gradients.end()) return it->second;
    }
    auto g = points_[i].value.gradient();
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->gradients.emplace(i, g);
    return g;
  }

  FieldTower::Ptr tower_;
  std::vector<Point> points_;
  std::unordered_map<std::string, std::size_t> index_;
  PointSet colours_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace predim
