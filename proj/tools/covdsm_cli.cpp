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
// Command-line front end. It talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "covdsm/covdsm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAssertion = 3;

int exit_code(covdsm_status s) {
  switch (s) {
    case COVDSM_OK: return kExitOk;
    case COVDSM_ERR_CONFIG:
    case COVDSM_ERR_INVALID_ARGUMENT: return kExitConfig;
    case COVDSM_ERR_ASSERTION: return kExitAssertion;
    default: return kExitOther;
  }
}

// Thrown to unwind with a status; carries the library message.
struct Failure {
  covdsm_status status;
};

void check(covdsm_status s) {
  if (s != COVDSM_OK) throw Failure{s};
}

// Owns a string returned by the library.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { covdsm_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct RunDeleter {
  void operator()(covdsm_run* r) const { covdsm_run_destroy(r); }
};

struct ConfigArgs {
  std::string problem;
  std::string preset;
  std::string config;
  std::optional<std::uint64_t> seed;
};

void add_config_options(CLI::App* cmd, ConfigArgs& a) {
  cmd->add_option("--problem", a.problem, "Built-in problem name (see 'list')");
  auto* preset = cmd->add_option("--preset", a.preset, "Bundled preset name");
  auto* config = cmd->add_option("--config", a.config, "JSON config file or run manifest");
  preset->excludes(config);
  cmd->add_option("--seed", a.seed, "Seed override");
}

std::string resolve(const ConfigArgs& a) {
  OwnedString out;
  check(covdsm_resolve_config(a.preset.empty() ? nullptr : a.preset.c_str(),
                              a.config.empty() ? nullptr : a.config.c_str(),
                              a.problem.empty() ? nullptr : a.problem.c_str(),
                              a.seed.has_value() ? 1 : 0, a.seed.value_or(0), &out.p));
  return out.str();
}

// Shorthand oracles use r = 1 and the verification reference spacing r/200.
std::string oracle_json(const std::string& arg) {
  if (arg == "exact-grid") return R"({"kind":"exact-grid","radius":1,"divisions":200})";
  if (arg == "truncated") {
    return R"({"kind":"truncated","radius":1,"delta_r":1,)"
           R"("inner":{"kind":"exact-grid","divisions":200}})";
  }
  if (arg == "alpha-sampled") return R"({"kind":"alpha-sampled","radius":1,"alpha":0.5,"budget":256})";
  if (arg == "zero") return R"({"kind":"zero","radius":1})";
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) {
    std::cerr << "error: --oracle must be a kind name, inline JSON or a JSON file\n";
    throw Failure{COVDSM_ERR_CONFIG};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_run(const ConfigArgs& a, const std::string& out_dir) {
  const std::string cfg = resolve(a);
  covdsm_run* raw = nullptr;
  check(covdsm_run_create(cfg.c_str(), &raw));
  std::unique_ptr<covdsm_run, RunDeleter> run(raw);
  check(covdsm_run_write(run.get(), out_dir.c_str()));

  std::size_t iterations = 0, evals = 0, dim = 0;
  double f = 0.0;
  int set = 0;
  double x[16] = {};
  OwnedString term;
  check(covdsm_run_iterations(run.get(), &iterations));
  check(covdsm_run_unique_evaluations(run.get(), &evals));
  check(covdsm_run_final_value(run.get(), &f));
  check(covdsm_run_final_set(run.get(), &set));
  check(covdsm_run_termination(run.get(), &term.p));
  const covdsm_status ps = covdsm_run_final_point(run.get(), x, 16, &dim);
  std::printf("iterations %zu, unique evaluations %zu, final f %.17g, continuity set %d, %s\n",
              iterations, evals, f, set, term.str().c_str());
  if (ps == COVDSM_OK) {
    std::printf("final x (");
    for (std::size_t i = 0; i < dim; ++i) std::printf("%s%.17g", i ? ", " : "", x[i]);
    std::printf(")\n");
  }
  std::printf("artifacts in %s\n", out_dir.c_str());
  return kExitOk;
}

int cmd_bench(const ConfigArgs& a, std::size_t reps, const std::string& out_dir) {
  const std::string cfg = resolve(a);
  OwnedString csv;
  check(covdsm_bench(cfg.c_str(), reps, out_dir.c_str(), &csv.p));
  std::cout << csv.str();
  std::printf("%zu runs written under %s\n", 2 * reps, out_dir.c_str());
  return kExitOk;
}

int cmd_verify(const std::string& oracle, std::size_t trials, std::uint64_t seed, std::size_t dim,
               double tolerance) {
  const std::string spec = oracle_json(oracle);
  OwnedString report;
  int pass = 0;
  check(covdsm_verify_oracle(spec.c_str(), dim, trials, seed, tolerance, &report.p, &pass));
  std::cout << report.str() << '\n';
  return pass ? kExitOk : kExitAssertion;
}

int cmd_replay() {
  OwnedString text;
  int pass = 0;
  check(covdsm_replay_example41(&text.p, &pass));
  std::cout << text.str();
  return pass ? kExitOk : kExitAssertion;
}

int cmd_list() {
  OwnedString problems, presets;
  check(covdsm_list_problems(&problems.p));
  check(covdsm_list_presets(&presets.p));
  std::printf("problems %s\npresets %s\n", problems.str().c_str(), presets.str().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covdsm: covering direct search benchmarks"};
  app.require_subcommand(1);

  ConfigArgs run_args;
  std::string run_out = "covdsm-out/run";
  auto* run = app.add_subcommand("run", "Single solver run with trace, summary and curves");
  add_config_options(run, run_args);
  run->add_option("--out", run_out, "Output directory");

  ConfigArgs bench_args;
  std::size_t reps = 10;
  std::string bench_out = "covdsm-out/bench";
  auto* bench = app.add_subcommand("bench", "Matched-seed cDSM and DSM replications");
  add_config_options(bench, bench_args);
  bench->add_option("--reps", reps, "Replications per method")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Output directory");

  std::string oracle = "exact-grid";
  std::size_t trials = 200, dim = 2;
  std::uint64_t verify_seed = 0;
  double tolerance = 0.02;
  auto* verify = app.add_subcommand("verify-oracle", "Empirical covering-ratio check");
  verify->add_option("--oracle", oracle,
                     "exact-grid, truncated, alpha-sampled, zero, inline JSON or a JSON file");
  verify->add_option("--trials", trials, "Random instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Instance seed");
  verify->add_option("--dim", dim, "Dimension")->check(CLI::PositiveNumber);
  verify->add_option("--tolerance", tolerance, "Allowed shortfall below the declared beta");

  auto* replay = app.add_subcommand("replay-example41", "Closed-form replay of the revealing counterexample");
  auto* list = app.add_subcommand("list", "Built-in problems and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args, run_out);
    if (*bench) return cmd_bench(bench_args, reps, bench_out);
    if (*verify) return cmd_verify(oracle, trials, verify_seed, dim, tolerance);
    if (*replay) return cmd_replay();
    if (*list) return cmd_list();
  } catch (const Failure& f) {
    const std::string msg = covdsm_last_error();
    if (!msg.empty()) std::cerr << "error (" << covdsm_status_name(f.status) << "): " << msg << '\n';
    return exit_code(f.status);
  }
  return kExitOther;
}
