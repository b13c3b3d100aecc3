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

#include <string>

#include "covdsm/geometry.hpp"
#include "json.hpp"

namespace covdsm::json_io {

using nlohmann::json;

inline json to_json(const Point& p) { return json(p.values()); }

/// +inf has no JSON literal; it is written as the string "+inf".
inline json to_json(ExtendedValue v) {
  return v.is_finite() ? json(v.value()) : json("+inf");
}

Point point_from_json(const json& j);
ExtendedValue value_from_json(const json& j);

/// Shortest round-trip decimal form of a double ("+inf" for infinity).
std::string format_double(double v);

}  // namespace covdsm::json_io
