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
#include <cmath>
#include <limits>
#include <vector>

#include "covdsm/analysis.hpp"
#include "covdsm/config.hpp"
#include "covdsm/experiments.hpp"
#include "covdsm/problems.hpp"
#include "doctest.h"
#include "support/brute.hpp"

using namespace covdsm;

namespace {

IterationRecord record(std::size_t k, const Point& x, double delta, StepTag winner) {
  IterationRecord it;
  it.k = k;
  it.x = x;
  it.delta = delta;
  it.lower = delta;
  it.winner = winner;
  return it;
}

}  // namespace

TEST_CASE("refined points on a smooth run") {
  SolverConfig c;
  c.x0 = Point{1.0, 1.0};
  c.covering = CoveringMode::disabled;
  c.search = SearchKind::none;
  c.stop.delta_min = 1e-9;
  c.stop.k_max = 2000;
  const RunResult r = run(smooth_norm2().objective, c);
  const RefinedPointReport rep = detect_refined_points(r.iterations);
  REQUIRE(rep.candidates.size() == 1);
  CHECK(rep.candidates[0].point.norm() <= kDefaultClusterRadius);
  CHECK(rep.delta_threshold == kDefaultRefinedThreshold);
  for (std::size_t k : rep.candidates[0].iterations) {
    CHECK_FALSE(r.iterations[k].success());
    CHECK(r.iterations[k].delta <= kDefaultRefinedThreshold);
  }
}

TEST_CASE("refined points of the quadrant replay") {
  const RunOutput out = execute(load_preset("example41-rdsm"));
  const RefinedPointReport rep = detect_refined_points(out.result.iterations);
  REQUIRE(rep.candidates.size() == 2);
  bool plus = false, minus = false;
  for (const auto& cand : rep.candidates) {
    plus |= brute::dist(cand.point, Point{1.0, 1.0}) <= kDefaultClusterRadius;
    minus |= brute::dist(cand.point, Point{-1.0, -1.0}) <= kDefaultClusterRadius;
  }
  CHECK(plus);
  CHECK(minus);
  // Success ratio of the replay: one success in every three iterations.
  const RatioCurves rc = success_ratio_curves(out.result.iterations);
  CHECK(rc.search.back() == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("refined point edge cases") {
  std::vector<IterationRecord> wins;
  for (std::size_t k = 0; k < 10; ++k) wins.push_back(record(k, Point{double(k), 0.0}, 1e-7, StepTag::poll));
  CHECK(detect_refined_points(wins).candidates.empty());
  // Appending successful iterations above the threshold changes nothing.
  std::vector<IterationRecord> t{record(0, Point{0.0, 0.0}, 1e-6, StepTag::initial),
                                 record(1, Point{5.0, 0.0}, 1e-6, StepTag::initial)};
  const auto before = detect_refined_points(t);
  t.push_back(record(2, Point{9.0, 9.0}, 1.0, StepTag::search));
  const auto after = detect_refined_points(t);
  REQUIRE(before.candidates.size() == 2);
  REQUIRE(after.candidates.size() == 2);
  CHECK(before.candidates[1].point == after.candidates[1].point);
  for (std::size_t i = 0; i < after.candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < after.candidates.size(); ++j) {
      CHECK(brute::dist(after.candidates[i].point, after.candidates[j].point) > after.cluster_radius);
    }
  }
}

TEST_CASE("fill distance") {
  const Point c{0.2, -0.1};
  const double s = 0.1;
  const std::vector<Point> probes = [&] {
    std::vector<Point> g;
    for (const Point& d : brute::lattice_in_ball(2, s, 1.0)) g.push_back(c + d);
    return g;
  }();
  CHECK(fill_distance(probes, c, 1.0, s) == 0.0);
  const double single = fill_distance(std::vector<Point>{c}, c, 1.0, 0.01);
  CHECK(single <= 1.0);
  CHECK(single >= 1.0 - 0.01 * std::sqrt(2.0));
  const double coarse = 0.2;
  std::vector<Point> grid;
  for (const Point& d : brute::lattice_in_ball(2, coarse, 1.5)) grid.push_back(c + d);
  CHECK(fill_distance(grid, c, 1.0, coarse / 4) <= coarse * std::sqrt(2.0) / 2 + 1e-12);
  CHECK(fill_distance(std::vector<Point>{}, c, 1.0, 0.1) == std::numeric_limits<double>::infinity());

  UniformStream rng(6);
  std::vector<Point> h;
  double previous = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 60; ++i) {
    h.push_back(Point{rng.next() * 2 - 0.8, rng.next() * 2 - 1.1});
    const double fd = fill_distance(h, c, 1.0, 0.05);
    CHECK(fd == doctest::Approx(brute::fill_distance(h, c, 1.0, 0.05)).epsilon(1e-15));
    CHECK(fd <= previous);  // superset history never increases it
    previous = fd;
  }
  const SpatialIndex idx = SpatialIndex::from_points(h, 0.1);
  CHECK(fill_distance(idx, c, 1.0, 0.05) == fill_distance(h, c, 1.0, 0.05));
}

TEST_CASE("success ratios") {
  std::vector<IterationRecord> fails;
  for (std::size_t k = 0; k < 20; ++k) fails.push_back(record(k, Point{0.0}, 1.0, StepTag::initial));
  for (double v : success_ratio_curves(fails).failure) CHECK(v == 1.0);

  std::vector<IterationRecord> alt;
  for (std::size_t k = 0; k < 400; ++k) {
    alt.push_back(record(k, Point{0.0}, 1.0, k % 2 == 0 ? StepTag::covering : StepTag::initial));
  }
  const RatioCurves rc = success_ratio_curves(alt);
  CHECK(rc.covering.back() == doctest::Approx(0.5));
  for (std::size_t k = 0; k < alt.size(); ++k) {
    const double sum = rc.covering[k] + rc.search[k] + rc.poll[k] + rc.failure[k];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("best value curve") {
  SolverConfig c;
  c.x0 = Point{0.5, 0.5};
  c.stop.k_max = 1;
  const RunResult one = run(ptest1().objective, c);
  CHECK(best_value_curve(one).size() == 1);

  c.stop.k_max = 120;
  const RunResult r = run(ptest2().objective, c);
  const auto curve = best_value_curve(r);
  REQUIRE(curve.size() == r.iterations.size());
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].second <= curve[i - 1].second);
    CHECK(curve[i].first >= curve[i - 1].first);
  }
}

TEST_CASE("covering alpha bound") {
  std::vector<IterationRecord> t(2);
  t[0].covering.attained = 1.0;
  t[1].covering.attained = 0.5;
  CHECK(covering_alpha_bound(t, 0.01, 2) == doctest::Approx(1.0 - 0.02 * std::sqrt(2.0)));
  CHECK(covering_alpha_bound(std::vector<IterationRecord>{}, 0.01, 2) == 1.0);
}
