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
#include "covdsm/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "covdsm/error.hpp"
#include "covdsm/problems.hpp"

namespace covdsm {

// Generated from presets/*.json at configure time.
const std::vector<std::pair<std::string, std::string>>& bundled_presets();

namespace {

using json_io::json;

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::config, where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!keys.contains(key)) fail(ErrorKind::config, "unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, std::string("field '") + key + "' has the wrong type");
  }
}

double get_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(ErrorKind::config, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <class E>
E parse_enum(const std::string& text, const std::vector<std::pair<const char*, E>>& table,
             const char* what) {
  for (const auto& [name, value] : table) {
    if (text == name) return value;
  }
  std::string options;
  for (const auto& [name, value] : table) {
    (void)value;
    options += options.empty() ? name : std::string(", ") + name;
  }
  fail(ErrorKind::config, std::string("unknown ") + what + " '" + text + "' (expected " + options + ")");
}

const std::vector<std::pair<const char*, Variant>> kVariants = {
    {"mesh-based", Variant::mesh_based},
    {"sufficient-decrease", Variant::sufficient_decrease},
    {"generic", Variant::generic}};
const std::vector<std::pair<const char*, SearchKind>> kSearches = {
    {"none", SearchKind::none}, {"momentum", SearchKind::momentum},
    {"example41", SearchKind::example41}};
const std::vector<std::pair<const char*, PollKind>> kPolls = {
    {"orthogonal", PollKind::orthogonal}, {"coordinate", PollKind::coordinate},
    {"disabled", PollKind::disabled}};
const std::vector<std::pair<const char*, TrialFilter>> kFilters = {
    {"none", TrialFilter::none}, {"exclude-positive-x1-ray", TrialFilter::exclude_positive_x1_ray}};
const std::vector<std::pair<const char*, StepOrder>> kOrders = {
    {"covering-first", StepOrder::covering_first}, {"search-first", StepOrder::search_first}};
const std::vector<std::pair<const char*, OracleKind>> kOracles = {
    {"exact-mesh", OracleKind::exact_mesh}, {"exact-grid", OracleKind::exact_grid},
    {"alpha-sampled", OracleKind::alpha_sampled}, {"truncated", OracleKind::truncated},
    {"zero", OracleKind::zero}};
const std::vector<std::pair<const char*, GridBackend>> kBackends = {
    {"branch-and-bound", GridBackend::branch_and_bound},
    {"distance-transform", GridBackend::distance_transform}};
const std::vector<std::pair<const char*, SampleSource>> kSamplers = {
    {"halton", SampleSource::halton}, {"seeded-uniform", SampleSource::seeded_uniform}};
const std::vector<std::pair<const char*, RevealingSequence::Kind>> kSequences = {
    {"uniform-refinement", RevealingSequence::Kind::uniform_refinement},
    {"example41-quadrants", RevealingSequence::Kind::example41_quadrants}};

template <class E>
std::string name_of(E value, const std::vector<std::pair<const char*, E>>& table) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  fail(ErrorKind::config, "value has no JSON spelling");
}

}  // namespace

OracleSpec oracle_from_json(const json& j, double radius) {
  allow_keys(j, {"kind", "radius", "spacing", "divisions", "backend", "alpha", "budget", "sampler",
                 "seed", "delta_r", "inner"},
             "oracle");
  const double r = get_number(j, "radius", radius);
  const OracleKind kind =
      parse_enum(get_or<std::string>(j, "kind", "exact-grid"), kOracles, "oracle kind");
  switch (kind) {
    case OracleKind::exact_mesh: return OracleSpec::exact_mesh(r);
    case OracleKind::exact_grid: {
      if (j.contains("spacing") && j.contains("divisions")) {
        fail(ErrorKind::config, "give either spacing or divisions, not both");
      }
      const double divisions = get_number(j, "divisions", 50.0);
      const double spacing = get_number(j, "spacing", r / divisions);
      const GridBackend backend =
          parse_enum(get_or<std::string>(j, "backend", "branch-and-bound"), kBackends, "backend");
      return OracleSpec::exact_grid(r, spacing, backend);
    }
    case OracleKind::alpha_sampled:
      return OracleSpec::alpha_sampled(
          r, get_number(j, "alpha", 0.5), get_or<std::size_t>(j, "budget", 256),
          parse_enum(get_or<std::string>(j, "sampler", "seeded-uniform"), kSamplers, "sampler"),
          get_or<std::uint64_t>(j, "seed", 0));
    case OracleKind::truncated: {
      if (!j.contains("inner")) fail(ErrorKind::config, "truncated oracle needs 'inner'");
      const OracleSpec inner = oracle_from_json(j.at("inner"), r);
      return OracleSpec::truncated(inner, get_number(j, "delta_r", r));
    }
    case OracleKind::zero: return OracleSpec::zero(r);
  }
  fail(ErrorKind::config, "unreachable oracle kind");
}

json to_json(const OracleSpec& spec) {
  json j;
  j["kind"] = name_of(spec.kind, kOracles);
  j["radius"] = spec.radius;
  switch (spec.kind) {
    case OracleKind::exact_grid:
      j["spacing"] = spec.spacing;
      j["backend"] = name_of(spec.backend, kBackends);
      break;
    case OracleKind::alpha_sampled:
      j["alpha"] = spec.alpha;
      j["budget"] = spec.budget;
      j["sampler"] = name_of(spec.sampler, kSamplers);
      j["seed"] = spec.seed;
      break;
    case OracleKind::truncated:
      j["delta_r"] = spec.delta_r;
      j["inner"] = to_json(*spec.inner);
      break;
    default: break;
  }
  return j;
}

RunSpec run_spec_from_json(const json& j) {
  allow_keys(j, {"problem", "dimension", "variant", "x0", "radius", "delta0", "tau",
                 "expand_on_success", "covering", "search", "poll", "filter", "step_order", "stop",
                 "seed", "history_cell", "description", "license"},
             "config");
  RunSpec spec;
  spec.problem = get_or<std::string>(j, "problem", spec.problem);
  spec.dimension = get_or<std::size_t>(j, "dimension", 2);
  const Problem problem = make_problem(spec.problem, spec.dimension);
  spec.dimension = problem.dimension;

  SolverConfig& c = spec.solver;
  c.variant = parse_enum(get_or<std::string>(j, "variant", "generic"), kVariants, "variant");
  c.x0 = j.contains("x0") ? json_io::point_from_json(j.at("x0")) : problem.default_start;
  if (c.x0.size() != problem.dimension) {
    fail(ErrorKind::config, "x0 has dimension " + std::to_string(c.x0.size()) + " but problem '" +
                                spec.problem + "' has dimension " +
                                std::to_string(problem.dimension));
  }
  c.radius = get_number(j, "radius", 0.1);
  c.delta0 = get_number(j, "delta0", 1.0);
  c.tau = get_number(j, "tau", 0.5);
  c.expand_on_success = get_or<bool>(j, "expand_on_success", true);
  c.search = parse_enum(get_or<std::string>(j, "search", "momentum"), kSearches, "search");
  c.poll = parse_enum(get_or<std::string>(j, "poll", "orthogonal"), kPolls, "poll");
  c.filter = parse_enum(get_or<std::string>(j, "filter", "none"), kFilters, "filter");
  c.order = parse_enum(get_or<std::string>(j, "step_order", "covering-first"), kOrders, "step order");
  c.seed = get_or<std::uint64_t>(j, "seed", 0);
  c.history_cell = get_number(j, "history_cell", 0.0);

  const json covering = j.contains("covering") ? j.at("covering") : json::object();
  allow_keys(covering, {"mode", "oracle", "sequence"}, "covering");
  const std::string mode = get_or<std::string>(covering, "mode", "oracle");
  c.oracle = OracleSpec::exact_grid(c.radius, c.radius / 50.0);
  if (mode == "oracle") {
    c.covering = CoveringMode::oracle;
    if (covering.contains("oracle")) c.oracle = oracle_from_json(covering.at("oracle"), c.radius);
  } else if (mode == "revealing") {
    c.covering = CoveringMode::revealing;
    c.revealing.kind = parse_enum(get_or<std::string>(covering, "sequence", "uniform-refinement"),
                                  kSequences, "revealing sequence");
    c.revealing.radius = c.radius;
    c.revealing.dimension = c.x0.size();
  } else if (mode == "disabled") {
    c.covering = CoveringMode::disabled;
  } else {
    fail(ErrorKind::config, "unknown covering mode '" + mode + "'");
  }

  if (j.contains("stop")) {
    const json& stop = j.at("stop");
    allow_keys(stop, {"delta_min", "k_max", "eval_max"}, "stop");
    c.stop.delta_min = get_number(stop, "delta_min", c.stop.delta_min);
    c.stop.k_max = get_or<std::size_t>(stop, "k_max", c.stop.k_max);
    c.stop.eval_max = get_or<std::size_t>(stop, "eval_max", c.stop.eval_max);
  }
  c.validate();
  return spec;
}

json to_json(const RunSpec& spec) {
  const SolverConfig& c = spec.solver;
  json j;
  j["problem"] = spec.problem;
  j["dimension"] = spec.dimension;
  j["variant"] = name_of(c.variant, kVariants);
  j["x0"] = json_io::to_json(c.x0);
  j["radius"] = c.radius;
  j["delta0"] = c.delta0;
  j["tau"] = c.tau;
  j["expand_on_success"] = c.expand_on_success;
  json covering;
  switch (c.covering) {
    case CoveringMode::oracle:
      covering["mode"] = "oracle";
      covering["oracle"] = to_json(c.oracle);
      break;
    case CoveringMode::revealing:
      covering["mode"] = "revealing";
      covering["sequence"] = name_of(c.revealing.kind, kSequences);
      break;
    case CoveringMode::disabled: covering["mode"] = "disabled"; break;
  }
  j["covering"] = covering;
  if (c.search == SearchKind::custom || c.poll == PollKind::custom) {
    fail(ErrorKind::config, "custom hooks cannot be serialized");
  }
  j["search"] = name_of(c.search, kSearches);
  j["poll"] = name_of(c.poll, kPolls);
  j["filter"] = name_of(c.filter, kFilters);
  j["step_order"] = name_of(c.order, kOrders);
  json stop;
  stop["delta_min"] = c.stop.delta_min;
  stop["k_max"] = c.stop.k_max;
  stop["eval_max"] = c.stop.eval_max == std::numeric_limits<std::size_t>::max()
                         ? json(nullptr)
                         : json(c.stop.eval_max);
  j["stop"] = stop;
  j["seed"] = c.seed;
  j["history_cell"] = c.history_cell;
  return j;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : bundled_presets()) {
    (void)text;
    names.push_back(name);
  }
  return names;
}

std::optional<std::string> preset_text(const std::string& name) {
  for (const auto& [key, text] : bundled_presets()) {
    if (key == name) return text;
  }
  return std::nullopt;
}

RunSpec load_preset(const std::string& name) {
  const auto text = preset_text(name);
  if (!text) fail(ErrorKind::config, "unknown preset '" + name + "'");
  try {
    return run_spec_from_json(json::parse(*text));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, "preset '" + name + "' is not valid JSON: " + e.what());
  }
}

RunSpec load_run_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("artifacts")) return run_spec_from_json(j.at("config"));
  return run_spec_from_json(j);
}

}  // namespace covdsm
