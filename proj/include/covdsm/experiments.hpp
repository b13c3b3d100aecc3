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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "covdsm/config.hpp"
#include "covdsm/problems.hpp"
#include "covdsm/solver.hpp"

namespace covdsm {

struct RunOutput {
  RunSpec spec;
  Problem problem;
  RunResult result;
};

RunOutput execute(const RunSpec& spec);

struct ArtifactPaths {
  std::filesystem::path trace;
  std::filesystem::path summary;
  std::filesystem::path curves;
  std::filesystem::path manifest;
};

/// Writes trace.jsonl, summary.json, curves.csv and manifest.json into dir.
/// Loading the manifest back reproduces the same trace byte for byte.
ArtifactPaths write_run_artifacts(const RunOutput& out, const std::filesystem::path& dir);
std::string trace_text(const RunResult& run);

/// Same configuration with the covering step switched off.
RunSpec dsm_counterpart(const RunSpec& spec);

struct BenchRow {
  std::size_t run = 0;
  std::string method;  // "cdsm" or "dsm"
  std::uint64_t seed = 0;
  double final_f = 0.0;
  std::size_t unique_evals = 0;
  int final_set = 0;
  std::string termination;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // ordered by run, cdsm before dsm
  double wall_seconds = 0.0;
};

/// Worker count: COVDSM_THREADS if set and positive, else the hardware
/// concurrency, never more than the number of jobs.
std::size_t bench_threads(std::size_t jobs);

/// Replication i uses seed base.seed + i for both methods. When out_dir is
/// nonempty every run gets its own artifact directory and aggregate.csv is
/// written next to them.
BenchReport run_bench(const RunSpec& base, std::size_t replications,
                      const std::filesystem::path& out_dir);
void write_aggregate_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct Example41Row {
  std::size_t q = 0;
  Point x;
  double delta = 0.0;        // delta^{3q}
  double delta_third = 0.0;  // delta^{3q+2}
  std::size_t ell = 0;
  std::string pattern;  // winners of iterations 3q, 3q+1, 3q+2
};

struct Example41Replay {
  std::vector<Example41Row> rows;
  std::vector<std::string> failures;
  std::size_t interior_points = 0;  // history points strictly inside (-1,1)^2
  double fill_distance = 0.0;       // inside B_1((1,1)), probe spacing 1/40
  double wall_seconds = 0.0;

  bool ok() const noexcept { return failures.empty() && interior_points == 0; }
};

inline constexpr std::size_t kExample41Cycles = 11;  // q = 0..10

Example41Replay replay_example41();
void print_example41(std::ostream& out, const Example41Replay& replay);

}  // namespace covdsm
