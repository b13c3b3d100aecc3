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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "covdsm/config.hpp"
#include "covdsm/error.hpp"
#include "covdsm/experiments.hpp"
#include "covdsm/json_io.hpp"
#include "covdsm/serialization.hpp"
#include "doctest.h"

using namespace covdsm;
using json_io::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("covdsm-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunSpec short_spec(std::size_t k_max) {
  RunSpec spec = load_preset("appendixA2-cdsm");
  spec.solver.stop.k_max = k_max;
  return spec;
}

}  // namespace

TEST_CASE("presets load and round-trip") {
  CHECK(preset_names().size() >= 4);
  for (const std::string& name : preset_names()) {
    const RunSpec spec = load_preset(name);
    const json j = to_json(spec);
    CHECK(to_json(run_spec_from_json(j)) == j);
  }
  const RunSpec a2 = load_preset("appendixA2-cdsm");
  CHECK(a2.solver.x0 == Point{98.7654321, 12.3456789});
  CHECK(a2.solver.radius == 0.1);
  CHECK(a2.solver.oracle.spacing == 0.1 / 50);
  CHECK(a2.solver.stop.k_max == 300);
  CHECK(load_preset("appendixA2-dsm").solver.covering == CoveringMode::disabled);
  CHECK_THROWS_AS(load_preset("missing"), Error);
}

TEST_CASE("config parsing rules") {
  CHECK(run_spec_from_json(json{{"problem", "ptest2"}}).solver.x0 == Point{98.7654321, 12.3456789});
  CHECK(run_spec_from_json(json{{"problem", "smooth_norm2"}, {"dimension", 3}}).solver.x0 == Point(3, 1.0));
  CHECK_THROWS_AS(run_spec_from_json(json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(run_spec_from_json(json{{"variant", "fancy"}}), Error);
  CHECK_THROWS_AS(run_spec_from_json(json{{"x0", {1.0, 2.0, 3.0}}}), Error);
  CHECK_THROWS_AS(oracle_from_json(json{{"kind", "exact-grid"}, {"spacing", 0.1}, {"divisions", 4}}, 1.0), Error);
  CHECK_THROWS_AS(oracle_from_json(json{{"kind", "truncated"}}, 1.0), Error);
  const OracleSpec t = oracle_from_json(
      json{{"kind", "truncated"}, {"delta_r", 0.5}, {"inner", {{"kind", "exact-grid"}, {"divisions", 10}}}}, 2.0);
  CHECK(t.delta_r == 0.5);
  CHECK(t.inner->spacing == 0.2);
  CHECK(to_json(load_preset("prop73-generic")).at("stop").at("eval_max").is_null());
}

TEST_CASE("manifest files are accepted as configs") {
  const fs::path dir = scratch_dir("manifest");
  const RunOutput out = execute(short_spec(25));
  const ArtifactPaths paths = write_run_artifacts(out, dir);
  for (const fs::path& p : {paths.trace, paths.summary, paths.curves, paths.manifest}) {
    CHECK(fs::exists(p));
    CHECK_FALSE(fs::exists(fs::path(p.string() + ".tmp")));
  }
  const RunSpec again = load_run_spec_file(paths.manifest.string());
  CHECK(trace_text(execute(again).result) == slurp(paths.trace));
  const json manifest = json::parse(slurp(paths.manifest));
  CHECK(manifest.at("problem") == "ptest1");
  CHECK(manifest.at("seeds") == json::array({0}));
  fs::remove_all(dir);
}

TEST_CASE("trace lines") {
  const RunOutput out = execute(short_spec(5));
  const json line = iteration_to_json(out.result.iterations.front());
  for (const char* key : {"k", "x", "fx", "delta", "delta_lower", "rho", "ell", "covering", "search",
                          "poll", "winner", "t", "ft", "unique_evals", "proposals"}) {
    CHECK(line.contains(key));
  }
  CHECK_FALSE(line.contains("wall_seconds"));
  CHECK(line.at("covering").at("attained") == "+inf");  // empty history at k = 0
  std::istringstream in(trace_text(out.result));
  std::string l;
  std::size_t count = 0;
  while (std::getline(in, l)) {
    CHECK(json::parse(l).at("k") == count);
    ++count;
  }
  CHECK(count == out.result.iterations.size());
}

TEST_CASE("summary contents") {
  const RunOutput out = execute(load_preset("example41-rdsm"));
  const json s = summary_json(out.result, out.spec, out.problem);
  CHECK(s.at("problem") == "example41");
  CHECK(s.at("iterations") == 33);
  CHECK(s.at("refined_points").at("delta_threshold") == 1e-5);
  CHECK(s.at("refined_points").at("cluster_radius") == 1e-2);
  CHECK(s.at("refined_points").at("candidates").size() == 2);
  CHECK(s.at("cache_hits").get<std::size_t>() ==
        s.at("proposals").get<std::size_t>() - s.at("unique_evaluations").get<std::size_t>());
  CHECK(s.contains("evaluation_cache"));
}

TEST_CASE("curves CSV round-trips losslessly") {
  const RunOutput out = execute(short_spec(80));
  const auto rows = curve_rows(out.result);
  REQUIRE(rows.size() == 80);
  std::ostringstream os;
  write_curves_csv(os, rows);
  CHECK(os.str().rfind("k,unique_evals,best_f,delta,delta_min,cov_ratio,search_ratio,poll_ratio,fail_ratio\n", 0) == 0);
  std::istringstream is(os.str());
  CHECK(read_curves_csv(is) == rows);
  std::istringstream bad("k,x\n1,2\n");
  CHECK_THROWS_AS(read_curves_csv(bad), Error);
}

TEST_CASE("bench writes one directory per run and an aggregate") {
  const fs::path dir = scratch_dir("bench");
  RunSpec spec = short_spec(30);
  spec.solver.seed = 5;
  setenv("COVDSM_THREADS", "2", 1);
  CHECK(bench_threads(10) == 2);
  CHECK(bench_threads(1) == 1);
  const BenchReport rep = run_bench(spec, 2, dir);
  unsetenv("COVDSM_THREADS");
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].method == "cdsm");
  CHECK(rep.rows[1].method == "dsm");
  CHECK(rep.rows[0].seed == 5);
  CHECK(rep.rows[2].seed == 6);
  CHECK(rep.rows[1].seed == 5);
  for (const char* run : {"run-000-cdsm", "run-000-dsm", "run-001-cdsm", "run-001-dsm"}) {
    CHECK(fs::exists(dir / run / "summary.json"));
  }
  std::istringstream agg(slurp(dir / "aggregate.csv"));
  std::string header;
  std::getline(agg, header);
  CHECK(header == "run,method,seed,final_f,unique_evals,final_set,termination");
  // Concurrency does not change results.
  const BenchReport serial = run_bench(spec, 2, {});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(serial.rows[i].final_f == rep.rows[i].final_f);
    CHECK(serial.rows[i].unique_evals == rep.rows[i].unique_evals);
  }
  CHECK_THROWS_AS(run_bench(spec, 0, {}), Error);
  CHECK(dsm_counterpart(spec).solver.covering == CoveringMode::disabled);
  fs::remove_all(dir);
}

TEST_CASE("quadrant replay") {
  const Example41Replay replay = replay_example41();
  CHECK(replay.ok());
  CHECK(replay.rows.size() == kExample41Cycles);
  CHECK(replay.rows[1].x == Point{2.0, 2.0});
  CHECK(replay.interior_points == 0);
  CHECK(replay.fill_distance > 0.5);
  std::ostringstream os;
  print_example41(os, replay);
  CHECK(os.str().find("replay matches the closed form") != std::string::npos);
}
