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
#include "covdsm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "covdsm/analysis.hpp"
#include "covdsm/error.hpp"
#include "covdsm/json_io.hpp"
#include "covdsm/serialization.hpp"

namespace covdsm {

namespace fs = std::filesystem;
using json_io::json;

RunOutput execute(const RunSpec& spec) {
  Problem problem = make_problem(spec.problem, spec.dimension);
  RunResult result = run(problem.objective, spec.solver);
  return {spec, std::move(problem), std::move(result)};
}

std::string trace_text(const RunResult& run) {
  std::ostringstream os;
  write_trace_jsonl(os, run);
  return os.str();
}

ArtifactPaths write_run_artifacts(const RunOutput& out, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());

  ArtifactPaths paths{dir / "trace.jsonl", dir / "summary.json", dir / "curves.csv",
                      dir / "manifest.json"};
  write_file_atomic(paths.trace, trace_text(out.result));
  write_file_atomic(paths.summary,
                    summary_json(out.result, out.spec, out.problem).dump(2) + "\n");
  std::ostringstream curves;
  write_curves_csv(curves, curve_rows(out.result));
  write_file_atomic(paths.curves, curves.str());

  json manifest;
  manifest["problem"] = out.spec.problem;
  manifest["config"] = to_json(out.spec);
  manifest["seeds"] = json::array({out.spec.solver.seed});
  manifest["output_dir"] = dir.string();
  manifest["artifacts"] = {{"trace", paths.trace.filename().string()},
                           {"summary", paths.summary.filename().string()},
                           {"curves", paths.curves.filename().string()}};
  write_file_atomic(paths.manifest, manifest.dump(2) + "\n");
  return paths;
}

RunSpec dsm_counterpart(const RunSpec& spec) {
  RunSpec dsm = spec;
  dsm.solver.covering = CoveringMode::disabled;
  return dsm;
}

std::size_t bench_threads(std::size_t jobs) {
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COVDSM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

BenchReport run_bench(const RunSpec& base, std::size_t replications, const fs::path& out_dir) {
  if (replications == 0) fail(ErrorKind::config, "bench needs at least one replication");
  const auto start = std::chrono::steady_clock::now();

  std::vector<RunSpec> jobs;
  for (std::size_t i = 0; i < replications; ++i) {
    RunSpec cdsm = base;
    cdsm.solver.seed = base.solver.seed + i;
    jobs.push_back(cdsm);
    jobs.push_back(dsm_counterpart(cdsm));
  }

  BenchReport report;
  report.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const RunOutput out = execute(jobs[j]);
        const std::size_t rep = j / 2;
        const std::string method = j % 2 == 0 ? "cdsm" : "dsm";
        if (!out_dir.empty()) {
          char name[64];
          std::snprintf(name, sizeof name, "run-%03zu-%s", rep, method.c_str());
          write_run_artifacts(out, out_dir / name);
        }
        const SolverState& fin = out.result.final_state;
        report.rows[j] = {rep,
                          method,
                          jobs[j].solver.seed,
                          fin.fx.value(),
                          out.result.history.unique_evaluations(),
                          out.problem.classify(fin.x),
                          to_string(out.result.termination)};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const std::size_t threads = bench_threads(jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  if (!out_dir.empty()) {
    std::ostringstream csv;
    write_aggregate_csv(csv, report.rows);
    write_file_atomic(out_dir / "aggregate.csv", csv.str());
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_aggregate_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "run,method,seed,final_f,unique_evals,final_set,termination\n";
  for (const BenchRow& r : rows) {
    out << r.run << ',' << r.method << ',' << r.seed << ',' << json_io::format_double(r.final_f)
        << ',' << r.unique_evals << ',' << r.final_set << ',' << r.termination << '\n';
  }
}

namespace {

char winner_letter(const IterationRecord& it) {
  switch (it.winner) {
    case StepTag::covering: return 'C';
    case StepTag::search: return 'S';
    case StepTag::poll: return 'P';
    case StepTag::initial: break;
  }
  return '.';
}

}  // namespace

Example41Replay replay_example41() {
  const auto start = std::chrono::steady_clock::now();
  const RunSpec spec = load_preset("example41-rdsm");
  const RunOutput out = execute(spec);
  const auto& its = out.result.iterations;

  Example41Replay replay;
  auto check = [&](bool cond, std::size_t q, const std::string& what) {
    if (!cond) replay.failures.push_back("q=" + std::to_string(q) + ": " + what);
  };

  if (its.size() < 3 * kExample41Cycles) {
    replay.failures.push_back("replay stopped after " + std::to_string(its.size()) +
                              " iterations");
  } else {
    for (std::size_t q = 0; q < kExample41Cycles; ++q) {
      const IterationRecord& a = its[3 * q];
      const IterationRecord& b = its[3 * q + 1];
      const IterationRecord& c = its[3 * q + 2];
      const int qi = static_cast<int>(q);
      const double sign = q % 2 == 1 ? 1.0 : -1.0;  // (-1)^(q-1)
      const double expected = sign * (1.0 + std::ldexp(1.0, -(qi - 1)));
      const double delta = std::ldexp(1.0, -2 * qi);

      Example41Row row{q, a.x, a.delta, c.delta, a.ell,
                       {winner_letter(a), winner_letter(b), winner_letter(c)}};
      for (std::size_t i = 0; i < a.x.size(); ++i) {
        check(std::abs(a.x[i] - expected) <= 1e-12, q,
              "x^{3q} coordinate " + std::to_string(i) + " is " +
                  json_io::format_double(a.x[i]) + ", expected " +
                  json_io::format_double(expected));
      }
      check(std::abs(a.delta - delta) <= 1e-12, q, "delta^{3q} mismatch");
      check(std::abs(c.delta - 0.5 * delta) <= 1e-12, q, "delta^{3q+2} mismatch");
      check(a.ell == 2 * q, q, "revealing index l(3q) is " + std::to_string(a.ell));
      check(row.pattern == "S..", q, "success pattern is " + row.pattern);
      const Point& after = 3 * q + 3 < its.size() ? its[3 * q + 3].x : out.result.final_state.x;
      check(c.x == b.x && after == c.x, q, "failed iterations moved the incumbent");
      replay.rows.push_back(std::move(row));
    }
  }

  for (const EvalRecord& e : out.result.history.records()) {
    if (std::abs(e.point[0]) < 1.0 && std::abs(e.point[1]) < 1.0) ++replay.interior_points;
  }
  replay.fill_distance =
      fill_distance(out.result.history.index(), Point{1.0, 1.0}, 1.0, 1.0 / 40.0);
  replay.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return replay;
}

void print_example41(std::ostream& out, const Example41Replay& replay) {
  out << " q  x^{3q}                 delta^{3q}             delta^{3q+2}           l(3q)  pattern\n";
  for (const Example41Row& r : replay.rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%2zu  %-22s %-22s %-22s %5zu  %s\n", r.q,
                  json_io::format_double(r.x[0]).c_str(),
                  json_io::format_double(r.delta).c_str(),
                  json_io::format_double(r.delta_third).c_str(), r.ell, r.pattern.c_str());
    out << line;
  }
  out << "history points inside (-1,1)^2: " << replay.interior_points << '\n';
  out << "fill distance of H inside B_1((1,1)), probe spacing 1/40: "
      << json_io::format_double(replay.fill_distance) << '\n';
  for (const std::string& f : replay.failures) out << "MISMATCH " << f << '\n';
  out << (replay.ok() ? "replay matches the closed form\n" : "replay FAILED\n");
}

}  // namespace covdsm
