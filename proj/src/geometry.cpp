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

#include "covdsm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "covdsm/error.hpp"

namespace covdsm {

Point Point::unit(std::size_t n, std::size_t axis, double scale) {
  Point p(n);
  p[axis] = scale;
  return p;
}

bool Point::all_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return std::isfinite(v); });
}

bool Point::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double v) { return v == 0.0; });
}

double Point::squared_norm() const noexcept {
  double s = 0.0;
  for (double v : coords_) s += v * v;
  return s;
}

double Point::norm() const noexcept { return std::sqrt(squared_norm()); }

double Point::norm_inf() const noexcept {
  double m = 0.0;
  for (double v : coords_) m = std::max(m, std::abs(v));
  return m;
}

Point& Point::operator+=(const Point& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) noexcept {
  for (double& v : coords_) v *= s;
  return *this;
}

void require_same_dimension(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::dimension_mismatch, "dimension mismatch: " + std::to_string(a.size()) +
                                            " vs " + std::to_string(b.size()));
  }
}

double dot(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance(const Point& a, const Point& b) {
  require_same_dimension(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool lexicographic_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                      b.values().end());
}

ExtendedValue::ExtendedValue(double v) : v_(v) {
  if (std::isnan(v)) fail(ErrorKind::objective_contract, "objective value is NaN");
  if (v == -std::numeric_limits<double>::infinity()) {
    fail(ErrorKind::objective_contract, "objective value is -inf");
  }
}

ExtendedValue ExtendedValue::infinity() noexcept {
  ExtendedValue e;
  e.v_ = std::numeric_limits<double>::infinity();
  return e;
}

bool ExtendedValue::is_finite() const noexcept { return std::isfinite(v_); }

Ball::Ball(Point c, double r, Closedness cl) : center(std::move(c)), radius(r), closedness(cl) {
  if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "ball radius must be positive");
}

bool Ball::contains(const Point& p) const {
  const double d = distance(center, p);
  return closedness == Closedness::closed ? d <= radius : d < radius;
}

double dist_point_set(const Point& x, std::span<const Point> set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& s : set) best = std::min(best, distance(x, s));
  return best;
}

double halton(std::uint64_t index, std::uint32_t base) {
  if (index == 0) fail(ErrorKind::invalid_argument, "halton index starts at 1");
  if (base < 2) fail(ErrorKind::invalid_argument, "halton base must be >= 2");
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t c = 2; primes.size() < count; ++c) {
    const bool prime = std::none_of(primes.begin(), primes.end(), [c](std::uint32_t p) {
      return p * p <= c && c % p == 0;
    });
    if (prime) primes.push_back(c);
  }
  return primes;
}

Point halton_point(std::uint64_t index, std::size_t n) {
  const auto bases = first_primes(n);
  Point p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = halton(index, bases[i]);
  return p;
}

std::vector<Point> ball_sample(double r, std::size_t n, std::size_t count, SampleSource source,
                               std::uint64_t seed) {
  if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "ball_sample radius must be positive");
  if (n == 0) fail(ErrorKind::invalid_argument, "ball_sample dimension must be >= 1");
  std::vector<Point> out;
  out.reserve(count);
  const auto bases = first_primes(n);
  UniformStream stream(seed);
  std::uint64_t index = seed;
  while (out.size() < count) {
    Point p(n);
    if (source == SampleSource::halton) {
      ++index;
      for (std::size_t i = 0; i < n; ++i) p[i] = (2.0 * halton(index, bases[i]) - 1.0) * r;
    } else {
      for (std::size_t i = 0; i < n; ++i) p[i] = (2.0 * stream.next() - 1.0) * r;
    }
    if (p.norm() <= r) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> orthogonal_poll_directions(const Point& u, double delta) {
  if (u.empty()) fail(ErrorKind::invalid_argument, "poll seed direction has dimension 0");
  const double uu = u.squared_norm();
  if (!(uu > 0.0)) fail(ErrorKind::invalid_argument, "poll seed direction must be nonzero");
  if (!(delta > 0.0)) fail(ErrorKind::invalid_argument, "poll radius must be positive");
  const std::size_t n = u.size();
  std::vector<Point> dirs;
  dirs.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    Point col(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double identity = (i == j) ? 1.0 : 0.0;
      col[i] = identity - 2.0 * u[i] * u[j] / uu;
    }
    // Householder columns are unit vectors up to rounding; renormalize so
    // the scaling contract holds tightly.
    col *= delta / col.norm();
    dirs.push_back(col);
    dirs.push_back(-col);
  }
  return dirs;
}

}  // namespace covdsm
