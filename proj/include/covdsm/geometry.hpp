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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace covdsm {

/// A point (or direction) of R^n with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n, double fill = 0.0) : coords_(n, fill) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  static Point unit(std::size_t n, std::size_t axis, double scale = 1.0);

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  bool all_finite() const noexcept;
  bool is_zero() const noexcept;
  double squared_norm() const noexcept;
  double norm() const noexcept;
  double norm_inf() const noexcept;

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s) noexcept;

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

void require_same_dimension(const Point& a, const Point& b);
double dot(const Point& a, const Point& b);
/// Euclidean distance. Every distance in the library goes through this one
/// function so that independent code paths agree bit for bit.
double distance(const Point& a, const Point& b);
bool lexicographic_less(const Point& a, const Point& b);

/// Objective codomain R u {+inf}. NaN is rejected at construction.
class ExtendedValue {
 public:
  constexpr ExtendedValue() = default;
  ExtendedValue(double v);  // NOLINT(google-explicit-constructor)

  static ExtendedValue infinity() noexcept;

  bool is_finite() const noexcept;
  double value() const noexcept { return v_; }

  friend std::partial_ordering operator<=>(ExtendedValue a, ExtendedValue b) noexcept {
    return a.v_ <=> b.v_;
  }
  friend bool operator==(ExtendedValue a, ExtendedValue b) noexcept { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

enum class Closedness { open, closed };

struct Ball {
  Ball(Point center, double radius, Closedness closedness = Closedness::closed);

  bool contains(const Point& p) const;

  Point center;
  double radius;
  Closedness closedness;
};

/// inf over s in S of ||x - s||, +inf for an empty set.
double dist_point_set(const Point& x, std::span<const Point> set);

/// Radical inverse of `index` in `base`.
double halton(std::uint64_t index, std::uint32_t base);
/// Halton point in [0,1)^n using the first n primes as bases.
Point halton_point(std::uint64_t index, std::size_t n);
std::vector<std::uint32_t> first_primes(std::size_t count);

/// Portable uniform stream on [0,1) (53-bit mantissa of mt19937_64 output).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

enum class SampleSource { halton, seeded_uniform };

/// `count` points of the closed ball of radius r. Unit-cube samples are
/// scaled onto [-r, r]^n and points with norm > r are rejected. For the
/// Halton source the seed shifts the starting index.
std::vector<Point> ball_sample(double r, std::size_t n, std::size_t count, SampleSource source,
                               std::uint64_t seed = 0);

/// Columns of the Householder reflector I - 2uu^T/||u||^2 scaled to norm
/// delta, each followed by its negative: h1, -h1, h2, -h2, ...
std::vector<Point> orthogonal_poll_directions(const Point& u, double delta);

}  // namespace covdsm
