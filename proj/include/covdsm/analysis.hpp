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
#include <span>
#include <utility>
#include <vector>

#include "covdsm/geometry.hpp"
#include "covdsm/history.hpp"
#include "covdsm/solver.hpp"

namespace covdsm {

inline constexpr double kDefaultRefinedThreshold = 1e-5;
inline constexpr double kDefaultClusterRadius = 1e-2;

struct RefinedCandidate {
  Point point;
  double cluster_radius = 0.0;
  std::vector<std::size_t> iterations;
};

struct RefinedPointReport {
  std::vector<RefinedCandidate> candidates;
  double delta_threshold = kDefaultRefinedThreshold;
  double cluster_radius = kDefaultClusterRadius;
};

/// Incumbents of failed iterations with delta^k <= threshold, clustered
/// greedily in chronological order. Each cluster is represented by its
/// latest incumbent.
RefinedPointReport detect_refined_points(std::span<const IterationRecord> trace,
                                         double delta_threshold = kDefaultRefinedThreshold,
                                         double cluster_radius = kDefaultClusterRadius);

/// Largest distance from a probe of center + (spacing Z^n n cl(B_r)) to the
/// history; +inf for an empty history.
double fill_distance(const SpatialIndex& history, const Point& center, double r, double spacing);
double fill_distance(std::span<const Point> history, const Point& center, double r,
                     double spacing);

struct RatioCurves {
  std::vector<double> covering;
  std::vector<double> search;
  std::vector<double> poll;
  std::vector<double> failure;
};

/// Running fractions of iterations 0..k won by each step or failed.
RatioCurves success_ratio_curves(std::span<const IterationRecord> trace);

/// (unique evaluations after iteration k, best value found so far), one
/// pair per iteration. The initial point's value counts from the start.
std::vector<std::pair<std::size_t, double>> best_value_curve(const RunResult& run);

/// Worst-case alpha implied by a grid oracle of the given spacing:
/// min over iterations of 1 - spacing*sqrt(n)/attained. Returns 1 when no
/// iteration had a positive finite attained distance.
double covering_alpha_bound(std::span<const IterationRecord> trace, double spacing,
                            std::size_t n);

}  // namespace covdsm
