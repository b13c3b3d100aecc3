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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "covdsm/config.hpp"
#include "covdsm/json_io.hpp"
#include "covdsm/problems.hpp"
#include "covdsm/solver.hpp"

namespace covdsm {

/// One trace line. Wall time is left out so that traces of identical runs
/// are byte-identical; it is reported in the summary instead.
json_io::json iteration_to_json(const IterationRecord& it);
void write_trace_jsonl(std::ostream& out, const RunResult& run);

json_io::json summary_json(const RunResult& run, const RunSpec& spec, const Problem& problem);

struct CurveRow {
  std::size_t k = 0;
  std::size_t unique_evals = 0;
  double best_f = 0.0;
  double delta = 0.0;
  double delta_min = 0.0;
  double cov_ratio = 0.0;
  double search_ratio = 0.0;
  double poll_ratio = 0.0;
  double fail_ratio = 0.0;

  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

std::vector<CurveRow> curve_rows(const RunResult& run);
void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows);
std::vector<CurveRow> read_curves_csv(std::istream& in);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace covdsm
