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
#include "covdsm/covdsm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include "covdsm/config.hpp"
#include "covdsm/error.hpp"
#include "covdsm/experiments.hpp"
#include "covdsm/json_io.hpp"
#include "covdsm/problems.hpp"
#include "covdsm/serialization.hpp"
#include "covdsm/verify.hpp"

struct covdsm_run {
  covdsm::RunOutput output;
};

namespace {

using covdsm::ErrorKind;
using covdsm::json_io::json;

thread_local std::string g_last_error;

covdsm_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::dimension_mismatch: return COVDSM_ERR_INVALID_ARGUMENT;
    case ErrorKind::config:
    case ErrorKind::objective_contract: return COVDSM_ERR_CONFIG;
    case ErrorKind::capacity: return COVDSM_ERR_CAPACITY;
    case ErrorKind::io: return COVDSM_ERR_IO;
    case ErrorKind::assertion: return COVDSM_ERR_ASSERTION;
  }
  return COVDSM_ERR_INTERNAL;
}

covdsm_status set_error(covdsm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and converts any exception into a status code.
template <class F>
covdsm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const covdsm::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const json::exception& e) {
    return set_error(COVDSM_ERR_CONFIG, std::string("JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return set_error(COVDSM_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(COVDSM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(COVDSM_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* name) {
  if (!p) covdsm::fail(ErrorKind::invalid_argument, std::string(name) + " is null");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) covdsm::fail(ErrorKind::io, "cannot open '" + path + "'");
  return json::parse(in);
}

json names_json(const std::vector<std::string>& names) {
  json arr = json::array();
  for (const std::string& n : names) arr.push_back(n);
  return arr;
}

}  // namespace

extern "C" {

const char* covdsm_version(void) { return "1.0.0"; }

const char* covdsm_status_name(covdsm_status status) {
  switch (status) {
    case COVDSM_OK: return "ok";
    case COVDSM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case COVDSM_ERR_CONFIG: return "config";
    case COVDSM_ERR_ASSERTION: return "assertion";
    case COVDSM_ERR_IO: return "io";
    case COVDSM_ERR_CAPACITY: return "capacity";
    case COVDSM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* covdsm_last_error(void) { return g_last_error.c_str(); }

void covdsm_string_free(char* s) { std::free(s); }

covdsm_status covdsm_list_problems(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = dup_string(names_json(covdsm::problem_names()).dump());
    return COVDSM_OK;
  });
}

covdsm_status covdsm_list_presets(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = dup_string(names_json(covdsm::preset_names()).dump());
    return COVDSM_OK;
  });
}

covdsm_status covdsm_preset_text(const char* name, char** out_json) {
  return guarded([&] {
    require(name, "name");
    require(out_json, "out_json");
    const auto text = covdsm::preset_text(name);
    if (!text) covdsm::fail(ErrorKind::config, std::string("unknown preset '") + name + "'");
    *out_json = dup_string(*text);
    return COVDSM_OK;
  });
}

covdsm_status covdsm_resolve_config(const char* preset, const char* config_path,
                                    const char* problem, int has_seed, uint64_t seed,
                                    char** out_config_json) {
  return guarded([&] {
    require(out_config_json, "out_config_json");
    json j = json::object();
    if (preset && config_path) {
      covdsm::fail(ErrorKind::config, "give either a preset or a config file, not both");
    }
    if (preset) {
      const auto text = covdsm::preset_text(preset);
      if (!text) covdsm::fail(ErrorKind::config, std::string("unknown preset '") + preset + "'");
      j = json::parse(*text);
    } else if (config_path) {
      j = read_json_file(config_path);
      if (j.is_object() && j.contains("config")) j = j.at("config");
    }
    if (!j.is_object()) covdsm::fail(ErrorKind::config, "configuration must be a JSON object");
    if (problem) {
      const std::string before = j.value("problem", std::string("ptest1"));
      if (before != problem) j.erase("x0");
      j["problem"] = problem;
    }
    if (has_seed) j["seed"] = seed;
    const covdsm::RunSpec spec = covdsm::run_spec_from_json(j);
    *out_config_json = dup_string(covdsm::to_json(spec).dump(2));
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_create(const char* config_json, covdsm_run** out_run) {
  return guarded([&] {
    require(config_json, "config_json");
    require(out_run, "out_run");
    *out_run = nullptr;
    const covdsm::RunSpec spec = covdsm::run_spec_from_json(json::parse(config_json));
    *out_run = new covdsm_run{covdsm::execute(spec)};
    return COVDSM_OK;
  });
}

void covdsm_run_destroy(covdsm_run* run) { delete run; }

covdsm_status covdsm_run_write(const covdsm_run* run, const char* out_dir) {
  return guarded([&] {
    require(run, "run");
    require(out_dir, "out_dir");
    covdsm::write_run_artifacts(run->output, out_dir);
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_summary_json(const covdsm_run* run, char** out_json) {
  return guarded([&] {
    require(run, "run");
    require(out_json, "out_json");
    const auto& o = run->output;
    *out_json = dup_string(covdsm::summary_json(o.result, o.spec, o.problem).dump(2));
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_trace_jsonl(const covdsm_run* run, char** out_text) {
  return guarded([&] {
    require(run, "run");
    require(out_text, "out_text");
    *out_text = dup_string(covdsm::trace_text(run->output.result));
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_iterations(const covdsm_run* run, size_t* out_count) {
  return guarded([&] {
    require(run, "run");
    require(out_count, "out_count");
    *out_count = run->output.result.iterations.size();
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_unique_evaluations(const covdsm_run* run, size_t* out_count) {
  return guarded([&] {
    require(run, "run");
    require(out_count, "out_count");
    *out_count = run->output.result.history.unique_evaluations();
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_final_value(const covdsm_run* run, double* out_value) {
  return guarded([&] {
    require(run, "run");
    require(out_value, "out_value");
    *out_value = run->output.result.final_state.fx.value();
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_final_set(const covdsm_run* run, int* out_set) {
  return guarded([&] {
    require(run, "run");
    require(out_set, "out_set");
    *out_set = run->output.problem.classify(run->output.result.final_state.x);
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_final_point(const covdsm_run* run, double* out, size_t capacity,
                                     size_t* out_dim) {
  return guarded([&] {
    require(run, "run");
    require(out_dim, "out_dim");
    const covdsm::Point& x = run->output.result.final_state.x;
    *out_dim = x.size();
    if (capacity < x.size()) {
      return set_error(COVDSM_ERR_CAPACITY, "buffer holds " + std::to_string(capacity) +
                                                " values, need " + std::to_string(x.size()));
    }
    require(out, "out");
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return COVDSM_OK;
  });
}

covdsm_status covdsm_run_termination(const covdsm_run* run, char** out_name) {
  return guarded([&] {
    require(run, "run");
    require(out_name, "out_name");
    *out_name = dup_string(covdsm::to_string(run->output.result.termination));
    return COVDSM_OK;
  });
}

covdsm_status covdsm_bench(const char* config_json, size_t replications, const char* out_dir,
                           char** out_aggregate_csv) {
  return guarded([&] {
    require(config_json, "config_json");
    require(out_aggregate_csv, "out_aggregate_csv");
    const covdsm::RunSpec spec = covdsm::run_spec_from_json(json::parse(config_json));
    const covdsm::BenchReport report =
        covdsm::run_bench(spec, replications, out_dir ? std::string(out_dir) : std::string());
    std::ostringstream csv;
    covdsm::write_aggregate_csv(csv, report.rows);
    *out_aggregate_csv = dup_string(csv.str());
    return COVDSM_OK;
  });
}

covdsm_status covdsm_verify_oracle(const char* oracle_json, size_t dimension, size_t trials,
                                   uint64_t seed, double tolerance, char** out_report_json,
                                   int* out_pass) {
  return guarded([&] {
    require(oracle_json, "oracle_json");
    require(out_report_json, "out_report_json");
    require(out_pass, "out_pass");
    if (trials == 0) covdsm::fail(ErrorKind::invalid_argument, "trials must be at least 1");
    if (dimension == 0) covdsm::fail(ErrorKind::invalid_argument, "dimension must be positive");
    const covdsm::OracleSpec spec = covdsm::oracle_from_json(json::parse(oracle_json), 1.0);
    spec.validate();
    const covdsm::BetaReport report = covdsm::verify_beta(spec, trials, dimension, seed);
    const double beta = spec.declared_beta();
    const bool pass = report.min_ratio >= beta - tolerance;
    json j;
    j["oracle"] = covdsm::to_json(spec);
    j["dimension"] = dimension;
    j["trials"] = trials;
    j["seed"] = seed;
    j["declared_beta"] = beta;
    j["tolerance"] = tolerance;
    j["min_ratio"] = report.min_ratio;
    j["trials_at_least_beta"] = report.count_at_least(beta);
    j["trials_at_least_beta_minus_tolerance"] = report.count_at_least(beta - tolerance);
    j["pass"] = pass;
    *out_report_json = dup_string(j.dump(2));
    *out_pass = pass ? 1 : 0;
    return COVDSM_OK;
  });
}

covdsm_status covdsm_replay_example41(char** out_text, int* out_pass) {
  return guarded([&] {
    require(out_text, "out_text");
    require(out_pass, "out_pass");
    const covdsm::Example41Replay replay = covdsm::replay_example41();
    std::ostringstream os;
    covdsm::print_example41(os, replay);
    *out_text = dup_string(os.str());
    *out_pass = replay.ok() ? 1 : 0;
    return COVDSM_OK;
  });
}

}  // extern "C"
