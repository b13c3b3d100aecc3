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

#include "covdsm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covdsm/error.hpp"

namespace covdsm {

namespace {

// floor(t + 1/2) with exact halves sent down: ceil(t - 1/2).
double nearest_index(double t) { return std::ceil(t - 0.5); }

double min_quadratic(double nu, double delta0) { return std::min(nu, nu * nu / delta0); }

void require_positive_nu(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    fail(ErrorKind::invalid_argument, "mesh parameter must be positive and finite");
  }
}

// Unit-ball volume in n dimensions.
double unit_ball_volume(std::size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

// Enumerates integer vectors i with ||cell * i|| <= r in lexicographic order.
template <class Emit>
void enumerate_lattice_ball(std::size_t n, double cell, double r, Emit&& emit) {
  std::vector<double> idx(n, 0.0);
  Point p(n);
  const double reach = std::floor(r / cell) + 1.0;
  auto rec = [&](auto&& self, std::size_t axis, double used) -> void {
    if (axis == n) {
      if (p.norm() <= r) emit(p);
      return;
    }
    const double remaining = std::max(0.0, r * r - used);
    const double span = std::min(reach, std::floor(std::sqrt(remaining) / cell) + 1.0);
    for (double i = -span; i <= span; i += 1.0) {
      p[axis] = cell * i;
      const double sq = p[axis] * p[axis];
      // Slack keeps boundary points for the exact final norm test.
      if (used + sq > r * r * (1.0 + 1e-12) + 1e-300) continue;
      self(self, axis + 1, used + sq);
    }
    p[axis] = 0.0;
  };
  rec(rec, 0, 0.0);
}

}  // namespace

MeshSpec MeshSpec::lattice(double delta0) {
  if (!(delta0 > 0.0)) fail(ErrorKind::invalid_argument, "lattice mesh needs delta0 > 0");
  return MeshSpec(Kind::lattice, delta0);
}

DecreaseSpec DecreaseSpec::min_quadratic(double delta0) {
  if (!(delta0 > 0.0)) fail(ErrorKind::invalid_argument, "min-quadratic decrease needs delta0 > 0");
  return DecreaseSpec(Kind::min_quadratic, delta0);
}

double mesh_cell(const MeshSpec& spec, double nu) {
  require_positive_nu(nu);
  return spec.is_lattice() ? min_quadratic(nu, spec.delta0()) : 0.0;
}

Point round_coordinatewise(const MeshSpec& spec, double nu, const Point& d) {
  const double cell = mesh_cell(spec, nu);
  if (!spec.is_lattice()) return d;
  Point out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = cell * nearest_index(d[i] / cell);
  return out;
}

Point round_to_mesh(const MeshSpec& spec, double nu, const Point& d, double r) {
  if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "covering radius must be positive");
  if (!spec.is_lattice()) {
    mesh_cell(spec, nu);
    return d;
  }
  const double cell = mesh_cell(spec, nu);
  if (!(cell > 0.0)) fail(ErrorKind::capacity, "mesh cell underflowed to zero");
  Point rounded = round_coordinatewise(spec, nu, d);
  if (rounded.norm() <= r) return rounded;

  // Boundary repair. The answer lies near c, the radial projection of d
  // onto the sphere (or d itself when d is inside). Any in-ball point p with
  // ||p - d|| <= D, where a = max(0, ||d|| - r), satisfies
  // ||p - c||^2 <= (D - a)^2 + D^2 - a^2, so one box scan around c is exact.
  const std::size_t n = d.size();
  const double dn = d.norm();
  const double a = std::max(0.0, dn - r);
  Point c = dn > r ? d * (r / dn) : d;
  for (std::size_t i = 0; i < n; ++i) {
    // Guard against the projection landing a hair outside the ball.
    c[i] = std::copysign(std::min(std::abs(c[i]), std::abs(d[i])), d[i]);
  }

  // Truncating c toward zero gives an in-ball starting point.
  Point best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = cell * std::trunc(c[i] / cell);
  if (!(best.norm() <= r)) best = Point(n);
  double best_dist = distance(best, d);

  auto scan = [&](double radius) {
    std::vector<double> lo(n), hi(n);
    double count = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::floor((c[i] - radius) / cell);
      hi[i] = std::ceil((c[i] + radius) / cell);
      count *= hi[i] - lo[i] + 1.0;
    }
    if (count > static_cast<double>(kDefaultEnumerationCap)) {
      fail(ErrorKind::capacity, "mesh rounding repair exceeds the enumeration cap");
    }
    std::vector<double> idx = lo;
    Point p(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) p[i] = cell * idx[i];
      if (p.norm() <= r) {
        const double dist = distance(p, d);
        if (dist < best_dist || (dist == best_dist && lexicographic_less(p, best))) {
          best = p;
          best_dist = dist;
        }
      }
      std::size_t axis = n;
      while (axis-- > 0) {
        if (idx[axis] < hi[axis]) {
          idx[axis] += 1.0;
          break;
        }
        idx[axis] = lo[axis];
      }
      if (axis == static_cast<std::size_t>(-1)) return;
    }
  };

  scan(2.0 * cell);  // cheap pass that usually tightens best_dist
  const double slack = best_dist * 1e-9 + cell * 1e-9;
  const double D = best_dist + slack;
  scan(std::sqrt(std::max(0.0, (D - a) * (D - a) + D * D - a * a)) + slack);
  return best;
}

std::vector<Point> mesh_points_in_ball(const MeshSpec& spec, double nu, double r, std::size_t n,
                                       std::size_t cap) {
  if (!spec.is_lattice()) {
    fail(ErrorKind::invalid_argument, "cannot enumerate the continuous mesh");
  }
  return lattice_points_in_ball(n, mesh_cell(spec, nu), r, cap);
}

std::vector<Point> lattice_points_in_ball(std::size_t n, double cell, double r, std::size_t cap) {
  if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "radius must be positive");
  if (!(cell > 0.0)) fail(ErrorKind::invalid_argument, "cell must be positive");
  if (n == 0) fail(ErrorKind::invalid_argument, "dimension must be >= 1");
  // Volume estimate with a half-diagonal inflation bounds the count.
  const double ratio = r / cell + std::sqrt(static_cast<double>(n)) / 2.0;
  const double predicted = unit_ball_volume(n) * std::pow(ratio, static_cast<double>(n));
  if (predicted > static_cast<double>(cap)) {
    fail(ErrorKind::capacity, "mesh enumeration would produce about " +
                                  std::to_string(static_cast<long long>(predicted)) +
                                  " points, above the cap of " + std::to_string(cap));
  }
  std::vector<Point> out;
  enumerate_lattice_ball(n, cell, r, [&](const Point& p) { out.push_back(p); });
  return out;
}

double rho(const DecreaseSpec& spec, double nu) {
  require_positive_nu(nu);
  return spec.kind() == DecreaseSpec::Kind::zero ? 0.0 : min_quadratic(nu, spec.delta0());
}

}  // namespace covdsm
