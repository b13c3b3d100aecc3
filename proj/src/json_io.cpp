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

#include "covdsm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "covdsm/error.hpp"

namespace covdsm::json_io {

Point point_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::config, "expected an array of coordinates");
  std::vector<double> coords;
  coords.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) fail(ErrorKind::config, "coordinate is not a number");
    coords.push_back(v.get<double>());
  }
  Point p(std::move(coords));
  if (!p.all_finite()) fail(ErrorKind::config, "coordinates must be finite");
  return p;
}

ExtendedValue value_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "+inf") return ExtendedValue::infinity();
  if (!j.is_number()) fail(ErrorKind::config, "expected a number or \"+inf\"");
  return ExtendedValue(j.get<double>());
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  // 17 significant digits always round-trip; prefer the shortest that does.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace covdsm::json_io
