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
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "covdsm/error.hpp"
#include "covdsm/geometry.hpp"
#include "doctest.h"
#include "support/brute.hpp"

using namespace covdsm;

TEST_CASE("point arithmetic and norms") {
  const Point a{3.0, -4.0};
  CHECK(a.norm() == 5.0);
  CHECK(a.norm_inf() == 4.0);
  CHECK(a.squared_norm() == 25.0);
  CHECK((a + Point{1.0, 1.0}) == Point{4.0, -3.0});
  CHECK((2.0 * a) == Point{6.0, -8.0});
  CHECK(Point::unit(3, 1, 2.0) == Point{0.0, 2.0, 0.0});
  CHECK(Point(2).is_zero());
  CHECK_THROWS_AS(require_same_dimension(Point{1.0}, Point{1.0, 2.0}), Error);
  CHECK(lexicographic_less(Point{-1.0, 5.0}, Point{0.0, -5.0}));
}

TEST_CASE("extended values reject NaN and order infinity last") {
  CHECK_THROWS_AS(ExtendedValue(std::nan("")), Error);
  CHECK(ExtendedValue(1e300) < ExtendedValue::infinity());
  CHECK_FALSE(ExtendedValue::infinity().is_finite());
}

TEST_CASE("balls") {
  const Ball closed(Point{0.0, 0.0}, 1.0);
  const Ball open(Point{0.0, 0.0}, 1.0, Closedness::open);
  CHECK(closed.contains(Point{1.0, 0.0}));
  CHECK_FALSE(open.contains(Point{1.0, 0.0}));
  CHECK(open.contains(Point{0.5, 0.5}));
}

TEST_CASE("dist_point_set examples") {
  const std::vector<Point> tri{{3.0, 4.0}};
  CHECK(dist_point_set(Point{0.0, 0.0}, tri) == 5.0);
  const std::vector<Point> member{{1.0, 1.0}, {9.0, 9.0}};
  CHECK(dist_point_set(Point{1.0, 1.0}, member) == 0.0);
  CHECK(dist_point_set(Point{0.0, 0.0}, std::vector<Point>{}) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("dist_point_set agrees with brute force") {
  UniformStream rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> set;
    for (int i = 0; i < 25; ++i) set.push_back(Point{rng.next() * 4 - 2, rng.next() * 4 - 2, rng.next()});
    const Point x{rng.next(), rng.next(), rng.next()};
    CHECK(dist_point_set(x, set) == doctest::Approx(brute::dist_to_set(x, set)).epsilon(1e-15));
  }
}

TEST_CASE("halton radical inverse") {
  CHECK(halton(1, 2) == 0.5);
  CHECK(halton(3, 2) == 0.75);
  CHECK(halton(2, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(halton(0, 2), Error);
  for (std::uint64_t i = 1; i < 2000; i += 7) {
    for (std::uint32_t b : {2u, 3u, 5u, 7u, 11u}) {
      CHECK(std::abs(halton(i, b) - brute::radical_inverse(i, b)) <= 1e-15);
    }
  }
}

TEST_CASE("first primes") {
  const auto p = first_primes(40);
  REQUIRE(p.size() == 40);
  std::uint32_t expect = 1;
  for (std::uint32_t q : p) {
    do ++expect;
    while (!brute::is_prime(expect));
    CHECK(q == expect);
  }
}

TEST_CASE("ball sampling") {
  for (auto src : {SampleSource::halton, SampleSource::seeded_uniform}) {
    for (const Point& d : ball_sample(1.0, 2, 500, src, 3)) CHECK(d.norm() <= 1.0);
    for (const Point& d : ball_sample(0.5, 3, 200, src, 3)) CHECK(d.norm() <= 0.5);
  }
  // First Halton point (1/2, 1/3) mapped from the unit cube onto [-r, r]^2.
  const auto first = ball_sample(0.1, 2, 1, SampleSource::halton);
  REQUIRE(first.size() == 1);
  CHECK(first[0][0] == 0.0);
  CHECK(first[0][1] == doctest::Approx(-0.1 / 3.0).epsilon(1e-14));
  CHECK(ball_sample(1.0, 2, 1000, SampleSource::seeded_uniform, 7) ==
        ball_sample(1.0, 2, 1000, SampleSource::seeded_uniform, 7));
  CHECK(ball_sample(1.0, 2, 10, SampleSource::seeded_uniform, 7) !=
        ball_sample(1.0, 2, 10, SampleSource::seeded_uniform, 8));
}

TEST_CASE("orthogonal poll directions") {
  const auto axis = orthogonal_poll_directions(Point{1.0, 0.0}, 1.0);
  const std::vector<Point> expected{{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  REQUIRE(axis.size() == 4);
  for (const Point& e : expected) {
    CHECK(std::any_of(axis.begin(), axis.end(),
                      [&](const Point& d) { return brute::dist(d, e) <= 1e-15; }));
  }

  UniformStream rng(5);
  for (std::size_t n : {2u, 3u, 5u}) {
    Point u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = rng.next() - 0.5;
    const double delta = 0.37;
    const auto dirs = orthogonal_poll_directions(u, delta);
    REQUIRE(dirs.size() == 2 * n);
    for (const Point& d : dirs) CHECK(std::abs(d.norm() - delta) <= 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) CHECK(std::abs(dot(dirs[2 * i], dirs[2 * j])) <= 1e-12);
    }
    // Positive spanning: every direction has a poll direction at an acute angle.
    for (int t = 0; t < 1000; ++t) {
      Point v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = rng.next() * 2 - 1;
      double best = -1.0;
      for (const Point& d : dirs) best = std::max(best, dot(v, d));
      CHECK(best > 0.0);
    }
  }
  CHECK_THROWS_AS(orthogonal_poll_directions(Point{0.0, 0.0}, 1.0), Error);
}
