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
#include <vector>

#include "covdsm/geometry.hpp"

namespace covdsm {

/// Mesh family M(nu) in direction space: either the lattice
/// min{nu, nu^2/delta0} Z^n or the whole of R^n.
class MeshSpec {
 public:
  enum class Kind { lattice, continuous };

  static MeshSpec lattice(double delta0);
  static MeshSpec continuous() noexcept { return MeshSpec(Kind::continuous, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_lattice() const noexcept { return kind_ == Kind::lattice; }
  double delta0() const noexcept { return delta0_; }

 private:
  MeshSpec(Kind kind, double delta0) : kind_(kind), delta0_(delta0) {}
  Kind kind_;
  double delta0_;
};

/// Sufficient-decrease function rho(nu): zero or min{nu, nu^2/delta0}.
class DecreaseSpec {
 public:
  enum class Kind { zero, min_quadratic };

  static DecreaseSpec zero() noexcept { return DecreaseSpec(Kind::zero, 0.0); }
  static DecreaseSpec min_quadratic(double delta0);

  Kind kind() const noexcept { return kind_; }
  double delta0() const noexcept { return delta0_; }

 private:
  DecreaseSpec(Kind kind, double delta0) : kind_(kind), delta0_(delta0) {}
  Kind kind_;
  double delta0_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Lattice cell min{nu, nu^2/delta0}; 0 for the continuous mesh.
double mesh_cell(const MeshSpec& spec, double nu);

/// Projects d onto M(nu) n cl(B_r). Coordinate-wise nearest lattice point
/// (halves go toward -inf); when that leaves the ball, the in-ball lattice
/// point closest to d is used instead (lexicographic first among equals).
/// The origin is always a candidate, so the result always exists.
Point round_to_mesh(const MeshSpec& spec, double nu, const Point& d, double r);

/// Coordinate-wise rounding onto M(nu) without a ball constraint.
Point round_coordinatewise(const MeshSpec& spec, double nu, const Point& d);

/// All points of M(nu) n cl(B_r) in lexicographic order.
std::vector<Point> mesh_points_in_ball(const MeshSpec& spec, double nu, double r, std::size_t n,
                                       std::size_t cap = kDefaultEnumerationCap);

double rho(const DecreaseSpec& spec, double nu);

/// Points cell * i (i integer) with norm <= r, lexicographic order.
std::vector<Point> lattice_points_in_ball(std::size_t n, double cell, double r,
                                          std::size_t cap = kDefaultEnumerationCap);

}  // namespace covdsm
