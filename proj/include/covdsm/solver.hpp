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
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "covdsm/geometry.hpp"
#include "covdsm/history.hpp"
#include "covdsm/mesh.hpp"
#include "covdsm/oracles.hpp"

namespace covdsm {

/// mesh-based: lattice mesh with rho = 0. sufficient-decrease: continuous
/// mesh with rho(nu) = min{nu, nu^2/delta0}. generic: continuous mesh,
/// rho = 0, the covering direction is taken straight from the oracle and
/// search/poll act as optional steps.
enum class Variant { mesh_based, sufficient_decrease, generic };
enum class CoveringMode { oracle, revealing, disabled };
/// example41 is the scripted search of the quadrant-cycling replay.
enum class SearchKind { none, momentum, example41, custom };
enum class PollKind { orthogonal, coordinate, disabled, custom };
/// exclude_positive_x1_ray rotates any direction d with x + d on
/// {x1 > 0, x2 = ... = 0} by 45 degrees in the (e1, e2) plane.
enum class TrialFilter { none, exclude_positive_x1_ray };
/// covering_first is the order of the method. search_first tries the search
/// step before covering; covering then still runs on every iteration whose
/// search fails.
enum class StepOrder { covering_first, search_first };

std::string to_string(Variant v);
std::string to_string(CoveringMode m);
std::string to_string(SearchKind s);
std::string to_string(PollKind p);
std::string to_string(TrialFilter f);
std::string to_string(StepOrder o);

struct StopRule {
  double delta_min = 1e-8;  // stop once delta^k < delta_min; 0 disables
  std::size_t k_max = 300;
  std::size_t eval_max = std::numeric_limits<std::size_t>::max();
};

struct SolverState {
  std::size_t k = 0;
  Point x;
  ExtendedValue fx;
  double delta = 1.0;
  double lower = 1.0;  // smallest poll radius so far
  std::optional<Point> previous;
  std::vector<double> lower_history;  // lower^0 .. lower^k
};

using DirectionHook =
    std::function<std::vector<Point>(const SolverState&, const History&)>;

struct SolverConfig {
  Variant variant = Variant::generic;
  Point x0;
  double radius = 0.1;
  double delta0 = 1.0;
  double tau = 0.5;
  bool expand_on_success = true;
  CoveringMode covering = CoveringMode::oracle;
  OracleSpec oracle = OracleSpec::exact_grid(0.1, 0.1 / 50.0);
  RevealingSequence revealing;
  SearchKind search = SearchKind::momentum;
  PollKind poll = PollKind::orthogonal;
  TrialFilter filter = TrialFilter::none;
  StepOrder order = StepOrder::covering_first;
  StopRule stop;
  std::uint64_t seed = 0;
  double history_cell = 0.0;  // spatial-hash cell; 0 means radius / 10
  DirectionHook custom_search;
  DirectionHook custom_poll;

  MeshSpec mesh() const;
  DecreaseSpec decrease() const;
  void validate() const;
};

enum class StepStatus { skipped, failed, success };
std::string to_string(StepStatus s);

struct StepOutcome {
  StepStatus status = StepStatus::skipped;
  std::vector<Point> directions;
  std::vector<Point> points;
  std::vector<ExtendedValue> values;
  std::optional<std::size_t> best;  // first minimizer in evaluation order
  /// Covering only: dist(x + d, H^k) of the first direction before evaluation.
  std::optional<double> attained;
};

enum class Termination { running, delta_min, k_max, eval_max, underflow, overflow };
std::string to_string(Termination t);

struct IterationRecord {
  std::size_t k = 0;
  Point x;
  ExtendedValue fx;
  double delta = 0.0;
  double lower = 0.0;
  double rho = 0.0;
  std::size_t ell = 0;  // revealing index l(k), 0 outside revealing mode
  StepOutcome covering;
  StepOutcome search;
  StepOutcome poll;
  StepTag winner = StepTag::initial;  // initial means the iteration failed
  Point t;
  ExtendedValue ft;
  std::size_t unique_evaluations = 0;  // after the iteration
  std::size_t proposals = 0;
  double wall_seconds = 0.0;

  bool success() const noexcept { return winner != StepTag::initial; }
};

struct RunResult {
  std::vector<IterationRecord> iterations;
  SolverState final_state;
  Termination termination = Termination::running;
  History history;
  double wall_seconds = 0.0;
};

/// Decrease test f(t) < f(x) - rho.
bool improves(ExtendedValue candidate, ExtendedValue incumbent, double rho);

StepOutcome covering_step(const SolverState& s, const SolverConfig& cfg, History& h,
                          const Objective& f);
StepOutcome search_step(const SolverState& s, const SolverConfig& cfg, History& h,
                        const Objective& f);
StepOutcome poll_step(const SolverState& s, const SolverConfig& cfg, History& h,
                      const Objective& f);
/// Unit seed vector of the orthogonal poll at iteration k.
Point poll_seed(std::size_t k, std::size_t n, std::uint64_t seed);
/// Applies the step-size rule; reports underflow or overflow of delta.
SolverState update_step(const SolverState& s, const SolverConfig& cfg,
                        const std::optional<std::pair<Point, ExtendedValue>>& winner,
                        Termination* status);

RunResult run(const Objective& f, const SolverConfig& cfg);

}  // namespace covdsm
