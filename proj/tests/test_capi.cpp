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
// Exercises the shared library through its C header only.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>

#include "covdsm/covdsm.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { covdsm_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string resolved(const char* preset, const char* problem, int has_seed, std::uint64_t seed) {
  Owned cfg;
  REQUIRE(covdsm_resolve_config(preset, nullptr, problem, has_seed, seed, &cfg.p) == COVDSM_OK);
  return cfg.str();
}

}  // namespace

TEST_CASE("listing") {
  Owned problems, presets, text;
  CHECK(covdsm_list_problems(&problems.p) == COVDSM_OK);
  CHECK(problems.str().find("\"ptest2\"") != std::string::npos);
  CHECK(covdsm_list_presets(&presets.p) == COVDSM_OK);
  CHECK(presets.str().find("\"example41-rdsm\"") != std::string::npos);
  CHECK(covdsm_preset_text("prop73-generic", &text.p) == COVDSM_OK);
  CHECK(text.str().find("exclude-positive-x1-ray") != std::string::npos);
  CHECK(std::strlen(covdsm_version()) > 0);
}

TEST_CASE("errors carry a status and a message") {
  Owned out;
  CHECK(covdsm_resolve_config("nope", nullptr, nullptr, 0, 0, &out.p) == COVDSM_ERR_CONFIG);
  CHECK(std::string(covdsm_last_error()).find("nope") != std::string::npos);
  CHECK(covdsm_list_problems(nullptr) == COVDSM_ERR_INVALID_ARGUMENT);
  covdsm_run* run = nullptr;
  CHECK(covdsm_run_create("{not json", &run) == COVDSM_ERR_CONFIG);
  CHECK(run == nullptr);
  CHECK(covdsm_run_create(R"({"problem":"ptest2","x0":[-1,0]})", &run) == COVDSM_ERR_CONFIG);
  CHECK(covdsm_resolve_config(nullptr, "/nonexistent/config.json", nullptr, 0, 0, &out.p) == COVDSM_ERR_IO);
  CHECK(std::string(covdsm_status_name(COVDSM_ERR_ASSERTION)) == "assertion");
  CHECK(covdsm_list_problems(&out.p) == COVDSM_OK);
  CHECK(std::string(covdsm_last_error()).empty());
}

TEST_CASE("problem override resets the start point") {
  const std::string cfg = resolved("example41-rdsm", "smooth_norm2", 1, 9);
  CHECK(cfg.find("\"smooth_norm2\"") != std::string::npos);
  CHECK(cfg.find("\"seed\": 9") != std::string::npos);
  covdsm_run* raw = nullptr;
  REQUIRE(covdsm_run_create(cfg.c_str(), &raw) == COVDSM_OK);
  double x[2] = {};
  std::size_t dim = 0;
  covdsm_run_destroy(raw);
  REQUIRE(covdsm_run_create(resolved("appendixA2-cdsm", "ptest2", 0, 0).c_str(), &raw) == COVDSM_OK);
  CHECK(covdsm_run_final_point(raw, x, 1, &dim) == COVDSM_ERR_CAPACITY);
  CHECK(dim == 2);
  CHECK(covdsm_run_final_point(raw, x, 2, &dim) == COVDSM_OK);
  covdsm_run_destroy(raw);
}

TEST_CASE("run handle accessors") {
  const std::string cfg = resolved("example41-rdsm", nullptr, 0, 0);
  covdsm_run* run = nullptr;
  REQUIRE(covdsm_run_create(cfg.c_str(), &run) == COVDSM_OK);
  std::size_t iterations = 0, evals = 0;
  double f = -1.0;
  int set = -1;
  Owned term, summary, trace, trace2;
  CHECK(covdsm_run_iterations(run, &iterations) == COVDSM_OK);
  CHECK(iterations == 33);
  CHECK(covdsm_run_unique_evaluations(run, &evals) == COVDSM_OK);
  CHECK(evals > 0);
  CHECK(covdsm_run_final_value(run, &f) == COVDSM_OK);
  CHECK(f > 1.0);
  CHECK(covdsm_run_final_set(run, &set) == COVDSM_OK);
  CHECK(set == 1);
  CHECK(covdsm_run_termination(run, &term.p) == COVDSM_OK);
  CHECK(term.str() == "k_max");
  CHECK(covdsm_run_summary_json(run, &summary.p) == COVDSM_OK);
  CHECK(summary.str().find("\"refined_points\"") != std::string::npos);
  CHECK(covdsm_run_trace_jsonl(run, &trace.p) == COVDSM_OK);

  covdsm_run* again = nullptr;
  REQUIRE(covdsm_run_create(cfg.c_str(), &again) == COVDSM_OK);
  CHECK(covdsm_run_trace_jsonl(again, &trace2.p) == COVDSM_OK);
  CHECK(trace.str() == trace2.str());

  const fs::path dir = fs::temp_directory_path() / "covdsm-capi-run";
  fs::remove_all(dir);
  CHECK(covdsm_run_write(run, dir.string().c_str()) == COVDSM_OK);
  CHECK(fs::exists(dir / "trace.jsonl"));
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
  covdsm_run_destroy(run);
  covdsm_run_destroy(again);
  covdsm_run_destroy(nullptr);
}

TEST_CASE("bench, verification and replay") {
  std::string cfg = resolved("appendixA2-cdsm", nullptr, 0, 0);
  const auto pos = cfg.find("\"k_max\": 300");
  REQUIRE(pos != std::string::npos);
  cfg.replace(pos, std::strlen("\"k_max\": 300"), "\"k_max\": 20");
  Owned csv;
  CHECK(covdsm_bench(cfg.c_str(), 1, nullptr, &csv.p) == COVDSM_OK);
  CHECK(csv.str().rfind("run,method,seed,final_f,unique_evals,final_set,termination\n0,cdsm,0,", 0) == 0);
  CHECK(covdsm_bench(cfg.c_str(), 0, nullptr, &csv.p) == COVDSM_ERR_CONFIG);

  Owned report;
  int pass = -1;
  CHECK(covdsm_verify_oracle(R"({"kind":"exact-grid","radius":1,"divisions":200})", 2, 10, 1, 0.02,
                             &report.p, &pass) == COVDSM_OK);
  CHECK(pass == 1);
  Owned zero;
  CHECK(covdsm_verify_oracle(R"({"kind":"zero"})", 2, 20, 1, 0.02, &zero.p, &pass) == COVDSM_OK);
  CHECK(pass == 0);
  CHECK(covdsm_verify_oracle(R"({"kind":"zero"})", 2, 0, 1, 0.02, &zero.p, &pass) ==
        COVDSM_ERR_INVALID_ARGUMENT);

  Owned table;
  CHECK(covdsm_replay_example41(&table.p, &pass) == COVDSM_OK);
  CHECK(pass == 1);
  CHECK(table.str().find("S..") != std::string::npos);
}
