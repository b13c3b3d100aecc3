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
#include <sstream>
#include <string>
#include <vector>

#include "covdsm/verify.hpp"
#include "doctest.h"
#include "support/brute.hpp"

using namespace covdsm;

TEST_CASE("reference grid maximum equals the brute-force scan") {
  UniformStream rng(12);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int t = 0; t < 10; ++t) {
      Point x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.next() * 2 - 1;
      std::vector<Point> s;
      for (int i = 0; i < 1 + t * 3; ++i) {
        Point p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = x[j] + rng.next() * 2 - 1;
        s.push_back(p);
      }
      const double spacing = n == 3 ? 0.1 : 0.04;
      const brute::Argmax ref = brute::argmax_over(brute::lattice_in_ball(n, spacing, 1.0), x, s);
      CHECK(reference_grid_max(s, x, spacing, 1.0) == ref.distance);
    }
  }
}

TEST_CASE("exact grid at the reference spacing is certified exactly") {
  const BetaReport rep = verify_beta(OracleSpec::exact_grid(1.0, 1.0 / 200), 15, 2, 3);
  CHECK(rep.trials.size() == 15);
  CHECK(rep.min_ratio == 1.0);
  CHECK(rep.count_at_least(1.0) == 15);
}

TEST_CASE("truncation and the zero oracle") {
  const BetaReport trunc =
      verify_beta(OracleSpec::truncated(OracleSpec::exact_grid(1.0, 1.0 / 200), 1.0), 15, 2, 5);
  CHECK(trunc.min_ratio >= 1.0 / 3.0 - 0.02);
  const BetaReport zero = verify_beta(OracleSpec::zero(1.0), 30, 2, 5);
  CHECK(zero.min_ratio < 0.5);
}

TEST_CASE("verification is reproducible and exports CSV") {
  const OracleSpec spec = OracleSpec::alpha_sampled(1.0, 0.5, 64);
  const BetaReport a = verify_beta(spec, 5, 2, 77);
  const BetaReport b = verify_beta(spec, 5, 2, 77);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].ratio == b.trials[i].ratio);
  std::ostringstream os;
  a.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "trial,numerator,denominator,ratio");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 5);
}
