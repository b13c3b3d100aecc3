/*
 * Copyright 2026 The covdsm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "covdsm/geometry.hpp"

namespace covdsm {

/// Objective f: R^n -> R u {+inf}. Returning NaN violates the contract.
using Objective = std::function<double(const Point&)>;

enum class StepTag { initial, covering, search, poll };

std::string_view to_string(StepTag tag);

struct EvalRecord {
  Point point;
  ExtendedValue value;
  std::size_t iteration = 0;
  StepTag tag = StepTag::initial;
};

/// Uniform-grid spatial hash over a growing point set. Nearest-distance
/// queries return exactly the value a linear scan would (same distance
/// function, exact minimum).
class SpatialIndex {
 public:
  SpatialIndex(std::size_t dimension, double cell_size);

  static SpatialIndex from_points(std::span<const Point> points, double cell_size);

  void insert(const Point& p);

  std::size_t dimension() const noexcept { return dimension_; }
  double cell_size() const noexcept { return cell_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  /// dist(q, points); +inf when empty.
  double nearest_distance(const Point& q) const;
  /// Index of the nearest point (first inserted among equals) and its distance.
  std::optional<std::pair<std::size_t, double>> nearest(const Point& q) const;
  /// Indices of points p with ||p - q|| <= radius, in insertion order.
  std::vector<std::size_t> within(const Point& q, double radius) const;

 private:
  using Key = std::vector<std::int64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Key key_of(const Point& p) const;
  template <class Visit>
  void visit_box(const Key& lo, const Key& hi, Visit&& visit) const;

  std::size_t dimension_;
  double cell_;
  std::vector<Point> points_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
  Key key_min_;
  Key key_max_;
};

/// Append-only trial-point history with an exact (bit-pattern) evaluation
/// cache. The initial point is evaluated through `evaluate_initial` and is
/// cached without joining the trial-point set until it is proposed as a
/// trial point.
class History {
 public:
  History(std::size_t dimension, double cell_size);

  ExtendedValue evaluate_initial(const Point& x, const Objective& f);
  ExtendedValue lookup_or_evaluate(const Point& x, const Objective& f, std::size_t iteration,
                                   StepTag tag);

  std::span<const EvalRecord> records() const noexcept { return records_; }
  const SpatialIndex& index() const noexcept { return index_; }
  std::size_t dimension() const noexcept { return index_.dimension(); }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  /// Number of true objective calls.
  std::size_t unique_evaluations() const noexcept { return unique_evaluations_; }
  /// Number of evaluation requests, cache hits included.
  std::size_t proposals() const noexcept { return proposals_; }
  std::optional<ExtendedValue> cached(const Point& x) const;
  const std::optional<EvalRecord>& initial() const noexcept { return initial_; }

  /// One JSON object per record: {"k", "tag", "point", "value"}.
  void write_jsonl(std::ostream& out) const;

 private:
  using Key = std::vector<std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  struct CacheEntry {
    ExtendedValue value;
    bool recorded = false;
  };

  static Key key_of(const Point& x);
  ExtendedValue call(const Point& x, const Objective& f);

  SpatialIndex index_;
  std::vector<EvalRecord> records_;
  std::unordered_map<Key, CacheEntry, KeyHash> cache_;
  std::optional<EvalRecord> initial_;
  std::size_t unique_evaluations_ = 0;
  std::size_t proposals_ = 0;
};

struct FarthestCandidate {
  std::size_t index;
  Point direction;
  double distance;
};

/// Candidate d maximizing dist(x + d, h); first maximizer wins ties.
FarthestCandidate max_dist_over_candidates(const SpatialIndex& h, const Point& x,
                                           std::span<const Point> candidates);

}  // namespace covdsm
