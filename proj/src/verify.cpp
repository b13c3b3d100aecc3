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
#include "covdsm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "covdsm/error.hpp"
#include "covdsm/history.hpp"
#include "covdsm/json_io.hpp"

namespace covdsm {

namespace {

double scan_dist(std::span<const Point> s, const Point& q) {
  double best = ExtendedValue::infinity().value();
  for (const Point& p : s) best = std::min(best, distance(p, q));
  return best;
}

// Depth-first branch and bound, deliberately independent of the oracle's
// best-first search and spatial hash.
struct ReferenceSearch {
  std::span<const Point> s;
  const Point& x;
  double h;
  double r;
  double best = -1.0;

  void leaf(std::vector<double>& lo, const std::vector<double>& hi) {
    const std::size_t n = x.size();
    std::vector<double> idx = lo;
    Point d(n);
    for (;;) {
      for (std::size_t j = 0; j < n; ++j) d[j] = h * idx[j];
      if (d.norm() <= r) best = std::max(best, scan_dist(s, x + d));
      std::size_t j = n;
      while (j-- > 0) {
        if (idx[j] < hi[j]) {
          idx[j] += 1.0;
          break;
        }
        idx[j] = lo[j];
      }
      if (j == static_cast<std::size_t>(-1)) return;
    }
  }

  void visit(std::vector<double> lo, std::vector<double> hi) {
    const std::size_t n = x.size();
    double count = 1.0;
    double near_sq = 0.0;
    double diag_sq = 0.0;
    Point c(n);
    std::size_t wide = 0;
    for (std::size_t j = 0; j < n; ++j) {
      count *= hi[j] - lo[j] + 1.0;
      const double a = h * lo[j];
      const double b = h * hi[j];
      const double z = a > 0.0 ? a : (b < 0.0 ? b : 0.0);
      near_sq += z * z;
      diag_sq += (b - a) * (b - a);
      c[j] = x[j] + (a + b) / 2.0;
      if (hi[j] - lo[j] > hi[wide] - lo[wide]) wide = j;
    }
    if (near_sq > r * r * (1.0 + 1e-12) + 1e-300) return;
    if (count <= 64.0) {
      leaf(lo, hi);
      return;
    }
    const double upper = scan_dist(s, c) + std::sqrt(diag_sq) / 2.0;
    if (best >= 0.0 && upper * (1.0 + 1e-9) < best) return;
    const double mid = std::floor((lo[wide] + hi[wide]) / 2.0);
    std::vector<double> lo2 = lo;
    std::vector<double> hi1 = hi;
    hi1[wide] = mid;
    lo2[wide] = mid + 1.0;
    visit(lo, hi1);
    visit(lo2, hi);
  }
};

}  // namespace

std::size_t BetaReport::count_at_least(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      trials.begin(), trials.end(), [&](const BetaTrial& t) { return t.ratio >= threshold; }));
}

void BetaReport::write_csv(std::ostream& out) const {
  out << "trial,numerator,denominator,ratio\n";
  for (const BetaTrial& t : trials) {
    out << t.trial << ',' << json_io::format_double(t.numerator) << ','
        << json_io::format_double(t.denominator) << ',' << json_io::format_double(t.ratio)
        << '\n';
  }
}

double reference_grid_max(std::span<const Point> s, const Point& x, double spacing, double r) {
  if (s.empty()) fail(ErrorKind::invalid_argument, "reference maximum needs points");
  if (!(spacing > 0.0) || !(r > 0.0)) fail(ErrorKind::invalid_argument, "bad grid");
  const double reach = std::floor(r / spacing) + 1.0;
  ReferenceSearch search{s, x, spacing, r};
  search.visit(std::vector<double>(x.size(), -reach), std::vector<double>(x.size(), reach));
  return search.best;
}

BetaReport verify_beta(const OracleSpec& spec, std::size_t trials, std::size_t n,
                       std::uint64_t seed) {
  if (trials == 0) fail(ErrorKind::invalid_argument, "verify_beta needs at least one trial");
  if (n == 0) fail(ErrorKind::invalid_argument, "dimension must be >= 1");
  spec.validate();
  const double r = spec.radius;
  const double reference = r / 200.0;
  UniformStream rng(seed);
  BetaReport report;
  report.min_ratio = ExtendedValue::infinity().value();
  for (std::size_t t = 0; t < trials; ++t) {
    Point x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = 2.0 * rng.next() - 1.0;
    const std::size_t count = 1 + std::min<std::size_t>(49, static_cast<std::size_t>(rng.next() * 50.0));
    std::vector<Point> s;
    while (s.size() < count) {
      Point d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = 2.0 * r * (2.0 * rng.next() - 1.0);
      if (d.norm() <= 2.0 * r) s.push_back(x + d);
    }
    const SpatialIndex index = SpatialIndex::from_points(s, r / 4.0);
    const OracleSpec trial_spec = spec.with_seed(spec.seed + t);
    double numerator = 0.0;
    for (const Point& d : oracle_directions(trial_spec, x, index)) {
      // A direction outside the ball does not count toward the ratio.
      if (d.norm() <= r) numerator = std::max(numerator, scan_dist(s, x + d));
    }
    BetaTrial row;
    row.trial = t;
    row.numerator = numerator;
    row.denominator = reference_grid_max(s, x, reference, r);
    row.ratio = row.denominator > 0.0 ? numerator / row.denominator : 1.0;
    report.min_ratio = std::min(report.min_ratio, row.ratio);
    report.trials.push_back(row);
  }
  return report;
}

}  // namespace covdsm
