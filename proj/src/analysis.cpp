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
#include "covdsm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covdsm/error.hpp"
#include "covdsm/mesh.hpp"

namespace covdsm {

RefinedPointReport detect_refined_points(std::span<const IterationRecord> trace,
                                         double delta_threshold, double cluster_radius) {
  if (trace.empty()) fail(ErrorKind::invalid_argument, "refined-point detection needs a trace");
  if (!(delta_threshold > 0.0) || !(cluster_radius > 0.0)) {
    fail(ErrorKind::invalid_argument, "thresholds must be positive");
  }
  RefinedPointReport report;
  report.delta_threshold = delta_threshold;
  report.cluster_radius = cluster_radius;
  for (const IterationRecord& it : trace) {
    if (it.success() || it.delta > delta_threshold) continue;
    auto match = std::find_if(report.candidates.begin(), report.candidates.end(),
                              [&](const RefinedCandidate& c) {
                                return distance(c.point, it.x) <= cluster_radius;
                              });
    if (match == report.candidates.end()) {
      report.candidates.push_back({it.x, cluster_radius, {it.k}});
    } else {
      match->point = it.x;
      match->iterations.push_back(it.k);
    }
  }
  return report;
}

double fill_distance(const SpatialIndex& history, const Point& center, double r, double spacing) {
  if (!(r > 0.0) || !(spacing > 0.0) || spacing > r) {
    fail(ErrorKind::invalid_argument, "fill distance needs 0 < spacing <= r");
  }
  if (history.dimension() != center.size()) {
    fail(ErrorKind::dimension_mismatch, "history/center dimension");
  }
  if (history.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Point& d : lattice_points_in_ball(center.size(), spacing, r)) {
    worst = std::max(worst, history.nearest_distance(center + d));
  }
  return worst;
}

double fill_distance(std::span<const Point> history, const Point& center, double r,
                     double spacing) {
  SpatialIndex index(center.size(), std::max(spacing, r / 10.0));
  for (const Point& p : history) index.insert(p);
  return fill_distance(index, center, r, spacing);
}

RatioCurves success_ratio_curves(std::span<const IterationRecord> trace) {
  if (trace.empty()) fail(ErrorKind::invalid_argument, "ratio curves need a trace");
  RatioCurves out;
  std::size_t cov = 0, search = 0, poll = 0, failed = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    switch (trace[i].winner) {
      case StepTag::covering: ++cov; break;
      case StepTag::search: ++search; break;
      case StepTag::poll: ++poll; break;
      case StepTag::initial: ++failed; break;
    }
    const auto total = static_cast<double>(i + 1);
    out.covering.push_back(static_cast<double>(cov) / total);
    out.search.push_back(static_cast<double>(search) / total);
    out.poll.push_back(static_cast<double>(poll) / total);
    out.failure.push_back(static_cast<double>(failed) / total);
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> best_value_curve(const RunResult& run) {
  std::vector<std::pair<std::size_t, double>> out;
  double best = std::numeric_limits<double>::infinity();
  if (run.history.initial()) best = run.history.initial()->value.value();
  const auto records = run.history.records();
  std::size_t next = 0;
  for (const IterationRecord& it : run.iterations) {
    while (next < records.size() && records[next].iteration <= it.k) {
      best = std::min(best, records[next].value.value());
      ++next;
    }
    out.emplace_back(it.unique_evaluations, best);
  }
  return out;
}

double covering_alpha_bound(std::span<const IterationRecord> trace, double spacing,
                            std::size_t n) {
  double bound = 1.0;
  const double diagonal = spacing * std::sqrt(static_cast<double>(n));
  for (const IterationRecord& it : trace) {
    const auto& a = it.covering.attained;
    if (a && std::isfinite(*a) && *a > 0.0) bound = std::min(bound, 1.0 - diagonal / *a);
  }
  return bound;
}

}  // namespace covdsm
