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
#include <iosfwd>
#include <span>
#include <vector>

#include "covdsm/geometry.hpp"
#include "covdsm/oracles.hpp"

namespace covdsm {

struct BetaTrial {
  std::size_t trial = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

struct BetaReport {
  std::vector<BetaTrial> trials;
  double min_ratio = 0.0;

  std::size_t count_at_least(double threshold) const;
  /// CSV with header trial,numerator,denominator,ratio.
  void write_csv(std::ostream& out) const;
};

/// Empirical check of the covering-oracle ratio on random instances: x in
/// [-1,1]^n, 1 to 50 points uniform in the closed 2r-ball around x, and a
/// reference maximum over the grid of spacing r/200.
BetaReport verify_beta(const OracleSpec& spec, std::size_t trials, std::size_t n,
                       std::uint64_t seed);

/// max over grid points d = spacing*i with ||d|| <= r of dist(x + d, s),
/// computed with plain linear scans over s.
double reference_grid_max(std::span<const Point> s, const Point& x, double spacing, double r);

}  // namespace covdsm
