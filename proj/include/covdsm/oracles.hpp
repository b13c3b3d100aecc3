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
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "covdsm/geometry.hpp"
#include "covdsm/history.hpp"
#include "covdsm/mesh.hpp"

namespace covdsm {

enum class OracleKind { exact_mesh, exact_grid, alpha_sampled, truncated, zero };
enum class GridBackend { branch_and_bound, distance_transform };

std::string to_string(OracleKind kind);

/// Covering-oracle description. Build through the named constructors.
/// `zero` always answers the null direction; it exists as a negative
/// control for certification and declares beta = 1 on purpose.
struct OracleSpec {
  OracleKind kind = OracleKind::exact_grid;
  double radius = 0.0;
  double spacing = 0.0;
  GridBackend backend = GridBackend::branch_and_bound;
  double alpha = 1.0;
  std::size_t budget = 0;
  SampleSource sampler = SampleSource::seeded_uniform;
  std::uint64_t seed = 0;
  double delta_r = 0.0;
  std::shared_ptr<const OracleSpec> inner;

  static OracleSpec exact_mesh(double r);
  static OracleSpec exact_grid(double r, double spacing,
                               GridBackend backend = GridBackend::branch_and_bound);
  static OracleSpec alpha_sampled(double r, double alpha, std::size_t budget,
                                  SampleSource sampler = SampleSource::seeded_uniform,
                                  std::uint64_t seed = 0);
  static OracleSpec truncated(const OracleSpec& inner, double delta_r);
  static OracleSpec zero(double r);

  double declared_beta() const;
  /// Copy with `seed` applied to this spec and every nested one.
  OracleSpec with_seed(std::uint64_t s) const;
  /// Throws when fields are inconsistent (non-positive radius, zero budget...).
  void validate() const;
};

/// Mesh information the exact-mesh oracle needs from the solver.
struct OracleContext {
  const MeshSpec* mesh = nullptr;
  double nu = 0.0;
};

/// Singleton direction set with ||d|| <= r.
std::vector<Point> oracle_directions(const OracleSpec& spec, const Point& x,
                                     const SpatialIndex& h, const OracleContext& ctx = {});

struct GridArgmax {
  Point direction;
  std::vector<double> index;  // integer grid coordinates of the direction
  double distance = 0.0;      // dist(x + direction, h)
};

/// Exact argmax of dist(x + s*i, h) over integer i with ||s*i|| <= r;
/// the lexicographically smallest i wins ties. Requires nonempty h.
GridArgmax grid_argmax(const SpatialIndex& h, const Point& x, double spacing, double r);

/// Same argmax for n = 2 from a distance transform of the history snapped
/// to the grid. Falls back to `grid_argmax` when snapping could matter.
GridArgmax grid_argmax_dt(const SpatialIndex& h, const Point& x, double spacing, double r);

/// Revealing-step direction sequence (D_l).
struct RevealingSequence {
  enum class Kind { uniform_refinement, example41_quadrants };
  Kind kind = Kind::uniform_refinement;
  double radius = 1.0;
  std::size_t dimension = 2;
};

std::vector<Point> revealing_directions(const RevealingSequence& seq, std::size_t ell);

/// Number of u < k with lower[u+1] < lower[u], where lower holds the
/// smallest-step-size history lower[0..k].
std::size_t revealing_index(std::span<const double> lower);

/// Row-major 2-D occupancy grid and its distance field.
struct DistanceField {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> squared;  // squared distance in cell units
  std::vector<double> distance;       // sqrt(squared) * spacing
};

/// Exact Euclidean distance transform between cell centers (separable
/// two-pass algorithm, linear in the number of cells).
DistanceField distance_transform_2d(std::span<const std::uint8_t> occupied, std::size_t rows,
                                    std::size_t cols, double spacing);

}  // namespace covdsm
