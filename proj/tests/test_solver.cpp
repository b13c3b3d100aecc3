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
#include "covdsm/problems.hpp"
#include "covdsm/solver.hpp"
#include "doctest.h"
#include "support/brute.hpp"

using namespace covdsm;

namespace {

SolverState state_at(const Point& x, double fx, double delta = 1.0) {
  SolverState s;
  s.x = x;
  s.fx = fx;
  s.delta = delta;
  s.lower = delta;
  s.lower_history = {delta};
  return s;
}

SolverConfig base_config(const Point& x0) {
  SolverConfig c;
  c.x0 = x0;
  return c;
}

}  // namespace

TEST_CASE("decrease test") {
  CHECK(improves(0.5, 1.0, 0.0));
  CHECK_FALSE(improves(0.9, 1.0, 0.25));
  CHECK_FALSE(improves(1.0, 1.0, 0.0));
  CHECK_FALSE(improves(ExtendedValue::infinity(), 1.0, 0.0));
}

TEST_CASE("covering success skips search and poll") {
  int calls = 0;
  const Objective f = [&](const Point& x) {
    ++calls;
    return x[0] > 1.05 ? 0.5 : 1.0;
  };
  SolverConfig c = base_config(Point{1.0, 0.0});
  c.stop.k_max = 1;
  const RunResult r = run(f, c);
  REQUIRE(r.iterations.size() == 1);
  const IterationRecord& it = r.iterations[0];
  // Empty history: the oracle answers r e1, which lands on the better side.
  CHECK(it.covering.status == StepStatus::success);
  CHECK(it.winner == StepTag::covering);
  CHECK(it.t == Point{1.1, 0.0});
  CHECK(it.search.status == StepStatus::skipped);
  CHECK(it.poll.status == StepStatus::skipped);
  CHECK(r.final_state.delta == 2.0);
  CHECK(calls == 2);
}

TEST_CASE("sufficient decrease margin rejects small gains") {
  SolverConfig c = base_config(Point{0.0, 0.0});
  c.variant = Variant::sufficient_decrease;
  c.delta0 = 0.5;  // rho(0.5) = min(0.5, 0.25 / 0.5) = 0.5
  c.radius = 0.1;
  c.search = SearchKind::none;
  History h(2, 0.01);
  const Objective f = [](const Point& x) { return x == Point{0.0, 0.0} ? 1.0 : 0.6; };
  const SolverState s = state_at(Point{0.0, 0.0}, 1.0, 0.5);
  const StepOutcome cov = covering_step(s, c, h, f);
  CHECK(cov.status == StepStatus::failed);
  const StepOutcome poll = poll_step(s, c, h, f);
  CHECK(poll.status == StepStatus::failed);
}

TEST_CASE("momentum search") {
  SolverConfig c = base_config(Point{2.0, 0.0});
  int calls = 0;
  const Objective f = [&](const Point& x) {
    ++calls;
    return x.norm();
  };
  History h(2, 0.1);
  SolverState s = state_at(Point{2.0, 0.0}, 2.0);
  SUBCASE("first iteration has no momentum") {
    const StepOutcome o = search_step(s, c, h, f);
    CHECK(o.status == StepStatus::skipped);
    CHECK(calls == 0);
  }
  SUBCASE("trial 3(x - previous)") {
    s.previous = Point{1.0, 0.0};
    s.k = 1;
    const StepOutcome o = search_step(s, c, h, f);
    REQUIRE(o.points.size() == 1);
    CHECK(o.points[0] == Point{5.0, 0.0});
    CHECK(o.status == StepStatus::failed);
  }
  SUBCASE("zero momentum after a failure is a cached failure") {
    h.lookup_or_evaluate(s.x, f, 0, StepTag::poll);
    s.previous = s.x;
    s.k = 1;
    const int before = calls;
    const StepOutcome o = search_step(s, c, h, f);
    CHECK(o.points == std::vector<Point>{s.x});
    CHECK(o.status == StepStatus::failed);
    CHECK(calls == before);
  }
}

TEST_CASE("poll step") {
  SolverConfig c = base_config(Point{0.0, 0.0});
  History h(2, 0.1);
  const Objective flat = [](const Point&) { return 1.0; };
  const SolverState s = state_at(Point{0.0, 0.0}, 1.0);
  const StepOutcome o = poll_step(s, c, h, flat);
  CHECK(o.points.size() == 4);
  CHECK(o.status == StepStatus::failed);
  for (const Point& d : o.directions) CHECK(std::abs(d.norm() - 1.0) <= 1e-12);
  const Point u = poll_seed(3, 3, 5);
  CHECK(u == poll_seed(3, 3, 5));
  CHECK_FALSE(u.is_zero());
  CHECK(poll_seed(3, 3, 5) != poll_seed(4, 3, 5));
}

TEST_CASE("mesh-based poll points lie on the mesh") {
  SolverConfig c = base_config(Point{0.0, 0.0});
  c.variant = Variant::mesh_based;
  c.oracle = OracleSpec::exact_mesh(c.radius);
  History h(2, 0.1);
  const Objective f = [](const Point& x) { return x.squared_norm(); };
  for (double lower : {1.0, 0.5, 0.125}) {
    SolverState s = state_at(Point{0.0, 0.0}, 0.0, lower);
    const StepOutcome o = poll_step(s, c, h, f);
    const double cell = mesh_cell(c.mesh(), lower);
    for (const Point& d : o.directions) {
      CHECK(d.norm() <= lower);
      for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(d[i] / cell - std::round(d[i] / cell)) <= 1e-12);
    }
  }
}

TEST_CASE("update step") {
  SolverConfig c = base_config(Point{0.0});
  const SolverState s = state_at(Point{0.0}, 1.0, 1.0);
  Termination t = Termination::running;
  const SolverState fail_next = update_step(s, c, std::nullopt, &t);
  CHECK(fail_next.delta == 0.5);
  CHECK(fail_next.lower == 0.5);
  CHECK(fail_next.x == s.x);
  CHECK(fail_next.lower_history == std::vector<double>{1.0, 0.5});
  const auto win = std::make_optional(std::make_pair(Point{1.0}, ExtendedValue(0.0)));
  CHECK(update_step(s, c, win, &t).delta == 2.0);
  CHECK(update_step(s, c, win, &t).lower == 1.0);
  c.expand_on_success = false;
  CHECK(update_step(s, c, win, &t).delta == 1.0);
  CHECK(t == Termination::running);
  SolverState tiny = state_at(Point{0.0}, 1.0, std::numeric_limits<double>::min());
  update_step(tiny, c, std::nullopt, &t);
  CHECK(t == Termination::underflow);
}

TEST_CASE("DSM smoke run on a smooth problem") {
  SolverConfig c = base_config(Point{1.0, 1.0});
  c.covering = CoveringMode::disabled;
  c.search = SearchKind::none;
  const Problem p = smooth_norm2();
  const RunResult r = run(p.objective, c);
  CHECK(r.iterations.size() <= 300);
  CHECK(r.final_state.fx.value() < 1e-6);
  for (std::size_t k = 1; k < r.iterations.size(); ++k) {
    CHECK(r.iterations[k].fx <= r.iterations[k - 1].fx);
  }
}

TEST_CASE("configuration checks") {
  const Problem p = ptest2();
  SolverConfig c = base_config(Point{-1.0, 0.0});
  CHECK_THROWS_AS(run(p.objective, c), Error);  // f(x0) = +inf
  SolverConfig bad = base_config(Point{0.0, 0.0});
  bad.variant = Variant::mesh_based;
  bad.filter = TrialFilter::exclude_positive_x1_ray;
  CHECK_THROWS_AS(bad.validate(), Error);
  SolverConfig poll_off = base_config(Point{0.0, 0.0});
  poll_off.variant = Variant::sufficient_decrease;
  poll_off.poll = PollKind::disabled;
  CHECK_THROWS_AS(poll_off.validate(), Error);
  SolverConfig mesh_oracle = base_config(Point{0.0, 0.0});
  mesh_oracle.oracle = OracleSpec::exact_mesh(0.1);
  CHECK_THROWS_AS(mesh_oracle.validate(), Error);
  SolverConfig hookless = base_config(Point{0.0, 0.0});
  hookless.search = SearchKind::custom;
  CHECK_THROWS_AS(hookless.validate(), Error);
}

TEST_CASE("custom hooks and stopping rules") {
  SolverConfig c = base_config(Point{0.0, 0.0});
  c.covering = CoveringMode::disabled;
  c.search = SearchKind::custom;
  c.custom_search = [](const SolverState& s, const History&) {
    return std::vector<Point>{Point{-1.0, 0.0} * (s.delta / 2)};
  };
  c.stop.eval_max = 7;
  const Objective f = [](const Point& x) { return x[0]; };
  const RunResult r = run(f, c);
  CHECK(r.termination == Termination::eval_max);
  CHECK(r.history.unique_evaluations() >= 7);
  CHECK(r.iterations.front().winner == StepTag::search);
}

TEST_CASE("trial filter keeps every trial off the positive x1 ray") {
  SolverConfig c = base_config(Point{0.0, 0.0});
  c.filter = TrialFilter::exclude_positive_x1_ray;
  c.search = SearchKind::none;
  c.stop.k_max = 40;
  c.stop.delta_min = 0.0;
  const Problem p = prop73();
  const RunResult r = run(p.objective, c);
  for (const EvalRecord& e : r.history.records()) {
    CHECK_FALSE((e.point[0] > 0.0 && e.point[1] == 0.0));
  }
}

TEST_CASE("identical configurations give identical runs") {
  SolverConfig c = base_config(Point{0.3, -0.2});
  c.seed = 4;
  c.stop.k_max = 60;
  const Problem p = ptest1();
  const RunResult a = run(p.objective, c);
  const RunResult b = run(p.objective, c);
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t k = 0; k < a.iterations.size(); ++k) {
    CHECK(a.iterations[k].x == b.iterations[k].x);
    CHECK(a.iterations[k].t == b.iterations[k].t);
  }
}
