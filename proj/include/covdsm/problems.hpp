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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covdsm/geometry.hpp"
#include "covdsm/history.hpp"

namespace covdsm {

struct KnownMinimum {
  Point point;
  double value = 0.0;
};

/// Built-in objective with analytic continuity-set metadata. `classify`
/// returns 0 outside the domain (where the objective is +inf).
struct Problem {
  std::string name;
  std::size_t dimension = 0;
  Objective objective;
  std::function<int(const Point&)> classify;
  std::optional<KnownMinimum> known_min;
  Point default_start;
};

Problem ptest1();
Problem ptest2();
Problem example41();
Problem prop73();
Problem smooth_norm2(std::size_t n = 2);

/// Registry lookup; throws a config error for unknown names.
Problem make_problem(const std::string& name, std::size_t n = 2);
std::vector<std::string> problem_names();

}  // namespace covdsm
