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

#include "covdsm/history.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>

#include "covdsm/error.hpp"
#include "covdsm/json_io.hpp"

namespace covdsm {

namespace {

constexpr std::int64_t kKeyLimit = std::int64_t{1} << 60;

std::size_t mix(std::size_t seed, std::uint64_t v) noexcept {
  v ^= v >> 33;
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  return seed ^ (static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string_view to_string(StepTag tag) {
  switch (tag) {
    case StepTag::initial: return "initial";
    case StepTag::covering: return "covering";
    case StepTag::search: return "search";
    case StepTag::poll: return "poll";
  }
  return "unknown";
}

std::size_t SpatialIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.size();
  for (std::int64_t v : k) h = mix(h, static_cast<std::uint64_t>(v));
  return h;
}

SpatialIndex::SpatialIndex(std::size_t dimension, double cell_size)
    : dimension_(dimension), cell_(cell_size) {
  if (dimension == 0) fail(ErrorKind::invalid_argument, "index dimension must be >= 1");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    fail(ErrorKind::invalid_argument, "index cell size must be positive");
  }
}

SpatialIndex SpatialIndex::from_points(std::span<const Point> points, double cell_size) {
  if (points.empty()) fail(ErrorKind::invalid_argument, "from_points needs at least one point");
  SpatialIndex idx(points.front().size(), cell_size);
  for (const Point& p : points) idx.insert(p);
  return idx;
}

SpatialIndex::Key SpatialIndex::key_of(const Point& p) const {
  Key k(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double c = std::floor(p[i] / cell_);
    k[i] = static_cast<std::int64_t>(
        std::clamp(c, -static_cast<double>(kKeyLimit), static_cast<double>(kKeyLimit)));
  }
  return k;
}

void SpatialIndex::insert(const Point& p) {
  if (p.size() != dimension_) {
    fail(ErrorKind::dimension_mismatch, "point dimension does not match the index");
  }
  Key k = key_of(p);
  if (points_.empty()) {
    key_min_ = k;
    key_max_ = k;
  } else {
    for (std::size_t i = 0; i < dimension_; ++i) {
      key_min_[i] = std::min(key_min_[i], k[i]);
      key_max_[i] = std::max(key_max_[i], k[i]);
    }
  }
  cells_[std::move(k)].push_back(points_.size());
  points_.push_back(p);
}

template <class Visit>
void SpatialIndex::visit_box(const Key& lo, const Key& hi, Visit&& visit) const {
  Key cur = lo;
  while (true) {
    if (auto it = cells_.find(cur); it != cells_.end()) visit(cur, it->second);
    std::size_t axis = 0;
    while (axis < dimension_) {
      if (cur[axis] < hi[axis]) {
        ++cur[axis];
        break;
      }
      cur[axis] = lo[axis];
      ++axis;
    }
    if (axis == dimension_) return;
  }
}

std::optional<std::pair<std::size_t, double>> SpatialIndex::nearest(const Point& q) const {
  if (points_.empty()) return std::nullopt;
  if (q.size() != dimension_) fail(ErrorKind::dimension_mismatch, "query dimension mismatch");

  std::size_t best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t i) {
    const double d = distance(q, points_[i]);
    if (d < best || (d == best && i < best_index)) {
      best = d;
      best_index = i;
    }
  };
  auto linear_scan = [&] {
    for (std::size_t i = 0; i < points_.size(); ++i) consider(i);
    return std::make_pair(best_index, best);
  };

  const Key kq = key_of(q);
  std::int64_t start = 0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    start = std::max({start, key_min_[i] - kq[i], kq[i] - key_max_[i]});
  }

  // Shell search in Chebyshev rings of cells. Work is capped at the cost of
  // a linear scan, which is then used instead.
  const double budget = static_cast<double>(points_.size()) + 16.0;
  double spent = 0.0;
  Key lo(dimension_), hi(dimension_);
  for (std::int64_t ring = start;; ++ring) {
    double cube = 1.0;
    bool covers_all = true;
    for (std::size_t i = 0; i < dimension_; ++i) {
      lo[i] = std::max(key_min_[i], kq[i] - ring);
      hi[i] = std::min(key_max_[i], kq[i] + ring);
      cube *= static_cast<double>(hi[i] - lo[i] + 1);
      covers_all = covers_all && lo[i] == key_min_[i] && hi[i] == key_max_[i];
    }
    spent += cube;
    if (spent > budget) return linear_scan();
    visit_box(lo, hi, [&](const Key& cell, const std::vector<std::size_t>& members) {
      std::int64_t cheb = 0;
      for (std::size_t i = 0; i < dimension_; ++i) cheb = std::max(cheb, std::abs(cell[i] - kq[i]));
      if (cheb != ring) return;
      for (std::size_t i : members) consider(i);
    });
    if (covers_all) break;
    // Unvisited cells are at Chebyshev offset >= ring + 1, hence at least
    // ring * cell away from q.
    if (best < static_cast<double>(ring) * cell_ * (1.0 - 1e-9)) break;
  }
  return std::make_pair(best_index, best);
}

double SpatialIndex::nearest_distance(const Point& q) const {
  const auto n = nearest(q);
  return n ? n->second : std::numeric_limits<double>::infinity();
}

std::vector<std::size_t> SpatialIndex::within(const Point& q, double radius) const {
  std::vector<std::size_t> out;
  if (points_.empty()) return out;
  if (q.size() != dimension_) fail(ErrorKind::dimension_mismatch, "query dimension mismatch");
  Key lo(dimension_), hi(dimension_);
  double cube = 1.0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double a = std::floor((q[i] - radius) / cell_) - 1.0;
    const double b = std::floor((q[i] + radius) / cell_) + 1.0;
    lo[i] = std::max(key_min_[i], static_cast<std::int64_t>(std::max(a, -1.0 * kKeyLimit)));
    hi[i] = std::min(key_max_[i], static_cast<std::int64_t>(std::min(b, 1.0 * kKeyLimit)));
    if (lo[i] > hi[i]) return out;
    cube *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  if (cube > static_cast<double>(points_.size())) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (distance(q, points_[i]) <= radius) out.push_back(i);
    }
    return out;
  }
  visit_box(lo, hi, [&](const Key&, const std::vector<std::size_t>& members) {
    for (std::size_t i : members) {
      if (distance(q, points_[i]) <= radius) out.push_back(i);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t History::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = k.size();
  for (std::uint64_t v : k) h = mix(h, v);
  return h;
}

History::History(std::size_t dimension, double cell_size) : index_(dimension, cell_size) {}

History::Key History::key_of(const Point& x) {
  Key k(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // -0.0 and +0.0 are the same point.
    const double v = x[i] == 0.0 ? 0.0 : x[i];
    k[i] = std::bit_cast<std::uint64_t>(v);
  }
  return k;
}

ExtendedValue History::call(const Point& x, const Objective& f) {
  if (x.size() != dimension()) fail(ErrorKind::dimension_mismatch, "trial point dimension mismatch");
  if (!x.all_finite()) fail(ErrorKind::invalid_argument, "trial point has non-finite coordinates");
  const double raw = f(x);
  if (std::isnan(raw)) fail(ErrorKind::objective_contract, "objective returned NaN");
  ++unique_evaluations_;
  return ExtendedValue(raw);
}

ExtendedValue History::evaluate_initial(const Point& x, const Objective& f) {
  ++proposals_;
  Key key = key_of(x);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second.value;
  const ExtendedValue v = call(x, f);
  cache_.emplace(std::move(key), CacheEntry{v, false});
  initial_ = EvalRecord{x, v, 0, StepTag::initial};
  return v;
}

ExtendedValue History::lookup_or_evaluate(const Point& x, const Objective& f,
                                          std::size_t iteration, StepTag tag) {
  ++proposals_;
  Key key = key_of(x);
  auto it = cache_.find(key);
  if (it != cache_.end() && it->second.recorded) return it->second.value;
  ExtendedValue v;
  if (it != cache_.end()) {
    v = it->second.value;
    it->second.recorded = true;
  } else {
    v = call(x, f);
    cache_.emplace(std::move(key), CacheEntry{v, true});
  }
  records_.push_back(EvalRecord{x, v, iteration, tag});
  index_.insert(x);
  return v;
}

std::optional<ExtendedValue> History::cached(const Point& x) const {
  if (auto it = cache_.find(key_of(x)); it != cache_.end()) return it->second.value;
  return std::nullopt;
}

void History::write_jsonl(std::ostream& out) const {
  for (const EvalRecord& r : records_) {
    nlohmann::json j;
    j["k"] = r.iteration;
    j["tag"] = std::string(to_string(r.tag));
    j["point"] = json_io::to_json(r.point);
    j["value"] = json_io::to_json(r.value);
    out << j.dump() << '\n';
  }
}

FarthestCandidate max_dist_over_candidates(const SpatialIndex& h, const Point& x,
                                           std::span<const Point> candidates) {
  if (candidates.empty()) fail(ErrorKind::invalid_argument, "no candidate directions");
  if (h.empty()) fail(ErrorKind::invalid_argument, "history is empty");
  FarthestCandidate best{0, candidates.front(), -1.0};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = h.nearest_distance(x + candidates[i]);
    if (d > best.distance) best = FarthestCandidate{i, candidates[i], d};
  }
  return best;
}

}  // namespace covdsm
