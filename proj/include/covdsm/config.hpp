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
#include <optional>
#include <string>
#include <vector>

#include "covdsm/json_io.hpp"
#include "covdsm/oracles.hpp"
#include "covdsm/solver.hpp"

namespace covdsm {

/// A problem name plus a full solver configuration. This is the unit that
/// config files, presets and run manifests describe.
struct RunSpec {
  std::string problem = "ptest1";
  std::size_t dimension = 2;
  SolverConfig solver;
};

/// Parses a run description. Missing fields take documented defaults
/// (x0 defaults to the problem's start point); unknown keys are rejected.
RunSpec run_spec_from_json(const json_io::json& j);
json_io::json to_json(const RunSpec& spec);

OracleSpec oracle_from_json(const json_io::json& j, double radius);
json_io::json to_json(const OracleSpec& spec);

/// Names and JSON text of the bundled presets.
std::vector<std::string> preset_names();
std::optional<std::string> preset_text(const std::string& name);
RunSpec load_preset(const std::string& name);

/// Reads a JSON file; a manifest's "config" member is accepted as well.
RunSpec load_run_spec_file(const std::string& path);

}  // namespace covdsm
