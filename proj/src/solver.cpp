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
#include "covdsm/solver.hpp"

#include <chrono>
#include <cmath>

#include "covdsm/error.hpp"

namespace covdsm {

namespace {

using Clock = std::chrono::steady_clock;

bool on_positive_x1_ray(const Point& p) {
  if (!(p[0] > 0.0)) return false;
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j] != 0.0) return false;
  }
  return true;
}

std::vector<Point> apply_filter(const SolverConfig& cfg, const Point& x, std::vector<Point> dirs) {
  if (cfg.filter == TrialFilter::none || x.size() < 2) return dirs;
  const double c = std::sqrt(0.5);
  std::vector<Point> kept;
  for (Point d : dirs) {
    for (int turn = 0; turn < 8 && on_positive_x1_ray(x + d); ++turn) {
      const double a = d[0];
      const double b = d[1];
      d[0] = c * a - c * b;
      d[1] = c * a + c * b;
    }
    if (!on_positive_x1_ray(x + d)) kept.push_back(std::move(d));
  }
  return kept;
}

StepOutcome evaluate(std::vector<Point> dirs, const SolverState& s, double rho, History& h,
                     const Objective& f, StepTag tag) {
  StepOutcome out;
  if (dirs.empty()) return out;
  out.directions = std::move(dirs);
  for (const Point& d : out.directions) {
    Point t = s.x + d;
    out.values.push_back(h.lookup_or_evaluate(t, f, s.k, tag));
    out.points.push_back(std::move(t));
    if (!out.best || out.values.back() < out.values[*out.best]) out.best = out.values.size() - 1;
  }
  out.status = improves(out.values[*out.best], s.fx, rho) ? StepStatus::success
                                                           : StepStatus::failed;
  return out;
}

double current_rho(const SolverConfig& cfg, const SolverState& s) {
  return rho(cfg.decrease(), s.lower);
}

// Scripted search of the quadrant-cycling replay: at k = 3q aim for
// (-1)^q (1 + 2^-q) times the all-ones vector.
std::vector<Point> example41_search(const SolverState& s) {
  if (s.k % 3 != 0) return {};
  const auto q = static_cast<int>(s.k / 3);
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const Point target(s.x.size(), sign * (1.0 + std::ldexp(1.0, -q)));
  return {target - s.x};
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::mesh_based: return "mesh-based";
    case Variant::sufficient_decrease: return "sufficient-decrease";
    case Variant::generic: return "generic";
  }
  return "unknown";
}

std::string to_string(CoveringMode m) {
  switch (m) {
    case CoveringMode::oracle: return "oracle";
    case CoveringMode::revealing: return "revealing";
    case CoveringMode::disabled: return "disabled";
  }
  return "unknown";
}

std::string to_string(SearchKind s) {
  switch (s) {
    case SearchKind::none: return "none";
    case SearchKind::momentum: return "momentum";
    case SearchKind::example41: return "example41";
    case SearchKind::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(PollKind p) {
  switch (p) {
    case PollKind::orthogonal: return "orthogonal";
    case PollKind::coordinate: return "coordinate";
    case PollKind::disabled: return "disabled";
    case PollKind::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(TrialFilter f) {
  return f == TrialFilter::none ? "none" : "exclude-positive-x1-ray";
}

std::string to_string(StepOrder o) {
  return o == StepOrder::covering_first ? "covering-first" : "search-first";
}

std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::skipped: return "skipped";
    case StepStatus::failed: return "failed";
    case StepStatus::success: return "success";
  }
  return "unknown";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::running: return "running";
    case Termination::delta_min: return "delta_min";
    case Termination::k_max: return "k_max";
    case Termination::eval_max: return "eval_max";
    case Termination::underflow: return "underflow";
    case Termination::overflow: return "overflow";
  }
  return "unknown";
}

MeshSpec SolverConfig::mesh() const {
  return variant == Variant::mesh_based ? MeshSpec::lattice(delta0) : MeshSpec::continuous();
}

DecreaseSpec SolverConfig::decrease() const {
  return variant == Variant::sufficient_decrease ? DecreaseSpec::min_quadratic(delta0)
                                                 : DecreaseSpec::zero();
}

void SolverConfig::validate() const {
  if (x0.empty()) fail(ErrorKind::config, "initial point is missing");
  if (!x0.all_finite()) fail(ErrorKind::config, "initial point must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::config, "radius must be positive");
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) fail(ErrorKind::config, "delta0 must be positive");
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorKind::config, "tau must lie in (0, 1)");
  if (!(stop.delta_min >= 0.0)) fail(ErrorKind::config, "delta_min must be nonnegative");
  if (history_cell < 0.0) fail(ErrorKind::config, "history cell must be nonnegative");
  if (covering == CoveringMode::oracle) {
    oracle.validate();
    if (oracle.radius != radius) fail(ErrorKind::config, "oracle radius differs from r");
    if (oracle.kind == OracleKind::exact_mesh && variant != Variant::mesh_based) {
      fail(ErrorKind::config, "exact-mesh oracle needs the mesh-based variant");
    }
  }
  if (covering == CoveringMode::revealing) {
    if (revealing.dimension != x0.size()) {
      fail(ErrorKind::config, "revealing sequence dimension differs from x0");
    }
    if (revealing.radius != radius) fail(ErrorKind::config, "revealing radius differs from r");
  }
  if (poll == PollKind::disabled && variant != Variant::generic) {
    fail(ErrorKind::config, "the poll step may only be disabled in the generic variant");
  }
  if (search == SearchKind::custom && !custom_search) {
    fail(ErrorKind::config, "custom search needs a hook");
  }
  if (poll == PollKind::custom && !custom_poll) fail(ErrorKind::config, "custom poll needs a hook");
  if (filter != TrialFilter::none) {
    if (variant == Variant::mesh_based) {
      fail(ErrorKind::config, "the ray filter rotates directions off the lattice mesh");
    }
    if (x0.size() < 2) fail(ErrorKind::config, "the ray filter needs n >= 2");
  }
}

bool improves(ExtendedValue candidate, ExtendedValue incumbent, double rho) {
  return candidate.is_finite() && candidate.value() < incumbent.value() - rho;
}

StepOutcome covering_step(const SolverState& s, const SolverConfig& cfg, History& h,
                          const Objective& f) {
  if (cfg.covering == CoveringMode::disabled) return {};
  const MeshSpec mesh = cfg.mesh();
  std::vector<Point> dirs;
  if (cfg.covering == CoveringMode::oracle) {
    const OracleContext ctx{&mesh, s.lower};
    dirs = oracle_directions(cfg.oracle.with_seed(cfg.oracle.seed + cfg.seed), s.x, h.index(),
                             ctx);
  } else {
    dirs = revealing_directions(cfg.revealing, revealing_index(s.lower_history));
  }
  if (mesh.is_lattice()) {
    for (Point& d : dirs) d = round_to_mesh(mesh, s.lower, d, cfg.radius);
  }
  dirs = apply_filter(cfg, s.x, std::move(dirs));
  std::optional<double> attained;
  if (!dirs.empty()) attained = h.index().nearest_distance(s.x + dirs.front());
  StepOutcome out = evaluate(std::move(dirs), s, current_rho(cfg, s), h, f, StepTag::covering);
  out.attained = attained;
  return out;
}

StepOutcome search_step(const SolverState& s, const SolverConfig& cfg, History& h,
                        const Objective& f) {
  std::vector<Point> dirs;
  switch (cfg.search) {
    case SearchKind::none: return {};
    case SearchKind::momentum:
      if (!s.previous) return {};
      dirs = {3.0 * (s.x - *s.previous)};
      break;
    case SearchKind::example41: dirs = example41_search(s); break;
    case SearchKind::custom: dirs = cfg.custom_search(s, h); break;
  }
  const MeshSpec mesh = cfg.mesh();
  if (mesh.is_lattice()) {
    for (Point& d : dirs) d = round_coordinatewise(mesh, s.lower, d);
  }
  return evaluate(apply_filter(cfg, s.x, std::move(dirs)), s, current_rho(cfg, s), h, f,
                  StepTag::search);
}

Point poll_seed(std::size_t k, std::size_t n, std::uint64_t seed) {
  Point u = halton_point(static_cast<std::uint64_t>(k) + 1 + seed * 997, n);
  for (std::size_t j = 0; j < n; ++j) u[j] = 2.0 * u[j] - 1.0;
  if (u.is_zero()) return Point::unit(n, 0);
  return u;
}

StepOutcome poll_step(const SolverState& s, const SolverConfig& cfg, History& h,
                      const Objective& f) {
  const std::size_t n = s.x.size();
  std::vector<Point> dirs;
  switch (cfg.poll) {
    case PollKind::disabled: return {};
    case PollKind::orthogonal:
      dirs = orthogonal_poll_directions(poll_seed(s.k, n, cfg.seed), s.delta);
      break;
    case PollKind::coordinate:
      for (std::size_t j = 0; j < n; ++j) {
        dirs.push_back(Point::unit(n, j, s.delta));
        dirs.push_back(Point::unit(n, j, -s.delta));
      }
      break;
    case PollKind::custom: dirs = cfg.custom_poll(s, h); break;
  }
  const MeshSpec mesh = cfg.mesh();
  if (mesh.is_lattice()) {
    for (Point& d : dirs) d = round_to_mesh(mesh, s.lower, d, s.delta);
  }
  return evaluate(apply_filter(cfg, s.x, std::move(dirs)), s, current_rho(cfg, s), h, f,
                  StepTag::poll);
}

SolverState update_step(const SolverState& s, const SolverConfig& cfg,
                        const std::optional<std::pair<Point, ExtendedValue>>& winner,
                        Termination* status) {
  SolverState next = s;
  next.k = s.k + 1;
  next.previous = s.x;
  if (winner) {
    next.x = winner->first;
    next.fx = winner->second;
    next.delta = cfg.expand_on_success ? s.delta / cfg.tau : s.delta;
  } else {
    next.delta = cfg.tau * s.delta;
  }
  next.lower = std::min(s.lower, next.delta);
  next.lower_history.push_back(next.lower);
  if (status != nullptr) {
    if (!(next.delta >= std::numeric_limits<double>::min())) *status = Termination::underflow;
    if (!std::isfinite(next.delta)) *status = Termination::overflow;
  }
  return next;
}

RunResult run(const Objective& f, const SolverConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const std::size_t n = cfg.x0.size();
  const double cell = cfg.history_cell > 0.0 ? cfg.history_cell : cfg.radius / 10.0;
  RunResult result{{}, {}, Termination::running, History(n, cell), 0.0};
  History& h = result.history;

  SolverState s;
  s.x = cfg.x0;
  s.fx = h.evaluate_initial(cfg.x0, f);
  if (!s.fx.is_finite()) fail(ErrorKind::config, "f(x0) is +inf: the initial point is infeasible");
  s.delta = cfg.delta0;
  s.lower = cfg.delta0;
  s.lower_history = {cfg.delta0};

  for (;;) {
    if (s.delta < cfg.stop.delta_min) {
      result.termination = Termination::delta_min;
      break;
    }
    if (s.k >= cfg.stop.k_max) {
      result.termination = Termination::k_max;
      break;
    }
    if (h.unique_evaluations() >= cfg.stop.eval_max) {
      result.termination = Termination::eval_max;
      break;
    }
    const auto iter_start = Clock::now();
    IterationRecord rec;
    rec.k = s.k;
    rec.x = s.x;
    rec.fx = s.fx;
    rec.delta = s.delta;
    rec.lower = s.lower;
    rec.rho = current_rho(cfg, s);
    if (cfg.covering == CoveringMode::revealing) rec.ell = revealing_index(s.lower_history);

    std::optional<std::pair<Point, ExtendedValue>> winner;
    auto take = [&](const StepOutcome& o, StepTag tag) {
      if (o.status != StepStatus::success) return false;
      winner.emplace(o.points[*o.best], o.values[*o.best]);
      rec.winner = tag;
      return true;
    };
    bool done = false;
    if (cfg.order == StepOrder::covering_first) {
      rec.covering = covering_step(s, cfg, h, f);
      done = take(rec.covering, StepTag::covering);
      if (!done) {
        rec.search = search_step(s, cfg, h, f);
        done = take(rec.search, StepTag::search);
      }
    } else {
      rec.search = search_step(s, cfg, h, f);
      done = take(rec.search, StepTag::search);
      if (!done) {
        rec.covering = covering_step(s, cfg, h, f);
        done = take(rec.covering, StepTag::covering);
      }
    }
    if (!done) {
      rec.poll = poll_step(s, cfg, h, f);
      take(rec.poll, StepTag::poll);
    }
    rec.t = winner ? winner->first : s.x;
    rec.ft = winner ? winner->second : s.fx;
    rec.unique_evaluations = h.unique_evaluations();
    rec.proposals = h.proposals();

    Termination status = Termination::running;
    s = update_step(s, cfg, winner, &status);
    rec.wall_seconds = std::chrono::duration<double>(Clock::now() - iter_start).count();
    result.iterations.push_back(std::move(rec));
    if (status != Termination::running) {
      result.termination = status;
      break;
    }
  }
  result.final_state = std::move(s);
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace covdsm
