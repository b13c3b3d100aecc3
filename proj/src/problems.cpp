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
#include "covdsm/problems.hpp"

#include <cmath>
#include <limits>

#include "covdsm/error.hpp"

namespace covdsm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const Point& x, std::size_t n) {
  if (x.size() != n) fail(ErrorKind::dimension_mismatch, "objective dimension mismatch");
}

// Slab membership for the second test problem: with a = (-1, 1), p is the
// projection of x onto span(a) and q = x - p.
bool in_cusp(const Point& x) {
  const double c = (x[1] - x[0]) / 2.0;
  const Point p{-c, c};
  const Point q = x - p;
  return p.norm() <= std::min(q.squared_norm(), 0.01);
}

int ptest2_class(const Point& x) {
  require_dim(x, 2);
  if (x[0] > 0.0) return 1;
  return in_cusp(x) ? 2 : 0;
}

bool prop73_thin(const Point& x) { return x[0] <= 0.0 || x[1] == 0.0; }

}  // namespace

Problem ptest1() {
  Problem p;
  p.name = "ptest1";
  p.dimension = 2;
  p.objective = [](const Point& x) {
    require_dim(x, 2);
    return x[0] > 0.0 ? x.norm_inf() + 1.0 : x.norm_inf();
  };
  p.classify = [](const Point& x) {
    require_dim(x, 2);
    return x[0] > 0.0 ? 1 : 2;
  };
  p.known_min = KnownMinimum{Point{0.0, 0.0}, 0.0};
  p.default_start = Point{98.7654321, 12.3456789};
  return p;
}

Problem ptest2() {
  Problem p;
  p.name = "ptest2";
  p.dimension = 2;
  p.objective = [](const Point& x) {
    switch (ptest2_class(x)) {
      case 1: return x.norm_inf() + 1.0;
      case 2: return x.norm_inf();
      default: return kInf;
    }
  };
  p.classify = ptest2_class;
  p.known_min = KnownMinimum{Point{0.0, 0.0}, 0.0};
  p.default_start = Point{98.7654321, 12.3456789};
  return p;
}

Problem example41() {
  Problem p;
  p.name = "example41";
  p.dimension = 2;
  p.objective = [](const Point& x) {
    require_dim(x, 2);
    return x.norm_inf();
  };
  p.classify = [](const Point& x) {
    require_dim(x, 2);
    return 1;
  };
  p.known_min = KnownMinimum{Point{0.0, 0.0}, 0.0};
  p.default_start = Point{-3.0, -3.0};
  return p;
}

Problem prop73() {
  Problem p;
  p.name = "prop73";
  p.dimension = 2;
  p.objective = [](const Point& x) {
    require_dim(x, 2);
    if (prop73_thin(x)) return std::abs(x[0] - 1.0) + std::abs(x[1]) - 1.0;
    return std::abs(x[0]) + std::abs(x[1]);
  };
  p.classify = [](const Point& x) {
    require_dim(x, 2);
    return prop73_thin(x) ? 1 : 2;
  };
  p.known_min = KnownMinimum{Point{1.0, 0.0}, -1.0};
  p.default_start = Point{0.0, 0.0};
  return p;
}

Problem smooth_norm2(std::size_t n) {
  if (n == 0) fail(ErrorKind::config, "dimension must be >= 1");
  Problem p;
  p.name = "smooth_norm2";
  p.dimension = n;
  p.objective = [n](const Point& x) {
    require_dim(x, n);
    return x.squared_norm();
  };
  p.classify = [n](const Point& x) {
    require_dim(x, n);
    return 1;
  };
  p.known_min = KnownMinimum{Point(n), 0.0};
  p.default_start = Point(n, 1.0);
  return p;
}

Problem make_problem(const std::string& name, std::size_t n) {
  if (name == "ptest1") return ptest1();
  if (name == "ptest2") return ptest2();
  if (name == "example41") return example41();
  if (name == "prop73") return prop73();
  if (name == "smooth_norm2") return smooth_norm2(n);
  fail(ErrorKind::config, "unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"ptest1", "ptest2", "example41", "prop73", "smooth_norm2"};
}

}  // namespace covdsm
