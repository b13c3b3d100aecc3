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
#include "covdsm/serialization.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "covdsm/analysis.hpp"
#include "covdsm/error.hpp"

namespace covdsm {

namespace {

using json_io::json;

json points_json(const std::vector<Point>& points) {
  json arr = json::array();
  for (const Point& p : points) arr.push_back(json_io::to_json(p));
  return arr;
}

json step_json(const StepOutcome& s) {
  json j;
  j["status"] = to_string(s.status);
  j["directions"] = points_json(s.directions);
  j["points"] = points_json(s.points);
  json values = json::array();
  for (ExtendedValue v : s.values) values.push_back(json_io::to_json(v));
  j["values"] = values;
  j["best"] = s.best ? json(*s.best) : json(nullptr);
  if (s.attained) j["attained"] = json_io::to_json(ExtendedValue(*s.attained));
  return j;
}

std::string winner_name(StepTag tag) {
  return tag == StepTag::initial ? "none" : std::string(to_string(tag));
}

const char* kCurveHeader =
    "k,unique_evals,best_f,delta,delta_min,cov_ratio,search_ratio,poll_ratio,fail_ratio";

double parse_double(const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::io, "bad number '" + field + "' in CSV");
  }
  if (used != field.size()) fail(ErrorKind::io, "bad number '" + field + "' in CSV");
  return v;
}

}  // namespace

json iteration_to_json(const IterationRecord& it) {
  json j;
  j["k"] = it.k;
  j["x"] = json_io::to_json(it.x);
  j["fx"] = json_io::to_json(it.fx);
  j["delta"] = it.delta;
  j["delta_lower"] = it.lower;
  j["rho"] = it.rho;
  j["ell"] = it.ell;
  j["covering"] = step_json(it.covering);
  j["search"] = step_json(it.search);
  j["poll"] = step_json(it.poll);
  j["winner"] = winner_name(it.winner);
  j["t"] = json_io::to_json(it.t);
  j["ft"] = json_io::to_json(it.ft);
  j["unique_evals"] = it.unique_evaluations;
  j["proposals"] = it.proposals;
  return j;
}

void write_trace_jsonl(std::ostream& out, const RunResult& run) {
  for (const IterationRecord& it : run.iterations) out << iteration_to_json(it).dump() << '\n';
}

json summary_json(const RunResult& run, const RunSpec& spec, const Problem& problem) {
  const SolverConfig& c = spec.solver;
  json j;
  j["problem"] = spec.problem;
  j["variant"] = to_string(c.variant);
  j["covering"] = to_string(c.covering);
  j["seed"] = c.seed;
  j["termination"] = to_string(run.termination);
  j["iterations"] = run.iterations.size();
  json final_state;
  final_state["x"] = json_io::to_json(run.final_state.x);
  final_state["f"] = json_io::to_json(run.final_state.fx);
  final_state["delta"] = run.final_state.delta;
  final_state["delta_lower"] = run.final_state.lower;
  final_state["continuity_set"] = problem.classify(run.final_state.x);
  j["final"] = final_state;

  const auto curve = best_value_curve(run);
  j["best_f"] = curve.empty() ? json_io::to_json(run.final_state.fx)
                              : json_io::to_json(ExtendedValue(curve.back().second));
  j["unique_evaluations"] = run.history.unique_evaluations();
  j["proposals"] = run.history.proposals();
  j["cache_hits"] = run.history.proposals() - run.history.unique_evaluations();
  j["evaluation_cache"] = "bit-exact; repeated proposals are not re-evaluated";
  if (problem.known_min) {
    j["known_min"] = {{"x", json_io::to_json(problem.known_min->point)},
                      {"f", problem.known_min->value}};
  }
  if (!run.iterations.empty()) {
    const RefinedPointReport refined = detect_refined_points(run.iterations);
    json candidates = json::array();
    for (const RefinedCandidate& cand : refined.candidates) {
      candidates.push_back({{"x", json_io::to_json(cand.point)},
                            {"supporting_iterations", cand.iterations.size()},
                            {"first_k", cand.iterations.front()},
                            {"last_k", cand.iterations.back()}});
    }
    j["refined_points"] = {{"delta_threshold", refined.delta_threshold},
                           {"cluster_radius", refined.cluster_radius},
                           {"candidates", candidates}};
  }
  if (c.covering == CoveringMode::oracle && c.oracle.kind == OracleKind::exact_grid) {
    j["covering_alpha_bound"] =
        covering_alpha_bound(run.iterations, c.oracle.spacing, c.x0.size());
  }
  if (c.covering == CoveringMode::oracle) j["oracle_declared_beta"] = c.oracle.declared_beta();
  j["wall_seconds"] = run.wall_seconds;
  return j;
}

std::vector<CurveRow> curve_rows(const RunResult& run) {
  std::vector<CurveRow> rows;
  if (run.iterations.empty()) return rows;
  const auto best = best_value_curve(run);
  const RatioCurves ratios = success_ratio_curves(run.iterations);
  for (std::size_t i = 0; i < run.iterations.size(); ++i) {
    const IterationRecord& it = run.iterations[i];
    rows.push_back({it.k, best[i].first, best[i].second, it.delta, it.lower, ratios.covering[i],
                    ratios.search[i], ratios.poll[i], ratios.failure[i]});
  }
  return rows;
}

void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  using json_io::format_double;
  out << kCurveHeader << '\n';
  for (const CurveRow& r : rows) {
    out << r.k << ',' << r.unique_evals << ',' << format_double(r.best_f) << ','
        << format_double(r.delta) << ',' << format_double(r.delta_min) << ','
        << format_double(r.cov_ratio) << ',' << format_double(r.search_ratio) << ','
        << format_double(r.poll_ratio) << ',' << format_double(r.fail_ratio) << '\n';
  }
}

std::vector<CurveRow> read_curves_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    fail(ErrorKind::io, "curves CSV header mismatch");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) fail(ErrorKind::io, "curves CSV row needs 9 fields");
    CurveRow r;
    r.k = static_cast<std::size_t>(std::stoull(f[0]));
    r.unique_evals = static_cast<std::size_t>(std::stoull(f[1]));
    r.best_f = parse_double(f[2]);
    r.delta = parse_double(f[3]);
    r.delta_min = parse_double(f[4]);
    r.cov_ratio = parse_double(f[5]);
    r.search_ratio = parse_double(f[6]);
    r.poll_ratio = parse_double(f[7]);
    r.fail_ratio = parse_double(f[8]);
    rows.push_back(r);
  }
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::io, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::io, "cannot rename into '" + path.string() + "': " + ec.message());
}

}  // namespace covdsm
