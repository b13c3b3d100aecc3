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
#include "covdsm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "covdsm/error.hpp"

namespace covdsm {

namespace {

constexpr std::size_t kLeafPoints = 32;
// Largest r/spacing ratio for which integer grid coordinates stay exact.
constexpr double kMaxGridReach = 0x1.0p50;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  double upper = 0.0;
};

struct BoxOrder {
  bool operator()(const Box& a, const Box& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return std::lexicographical_compare(b.lo.begin(), b.lo.end(), a.lo.begin(), a.lo.end());
  }
};

class GridSearch {
 public:
  GridSearch(const SpatialIndex& h, const Point& x, double spacing, double r)
      : h_(h), x_(x), s_(spacing), r_(r), n_(x.size()) {}

  GridArgmax run() {
    const double reach = std::floor(r_ / s_) + 1.0;
    Box root{std::vector<double>(n_, -reach), std::vector<double>(n_, reach), 0.0};
    std::priority_queue<Box, std::vector<Box>, BoxOrder> open;
    if (bound(root)) open.push(std::move(root));
    while (!open.empty()) {
      Box box = open.top();
      open.pop();
      if (found_ && box.upper * (1.0 + 1e-9) < best_) break;
      if (points_in(box) <= kLeafPoints) {
        scan(box);
        continue;
      }
      std::size_t axis = 0;
      for (std::size_t j = 1; j < n_; ++j) {
        if (box.hi[j] - box.lo[j] > box.hi[axis] - box.lo[axis]) axis = j;
      }
      const double mid = std::floor((box.lo[axis] + box.hi[axis]) / 2.0);
      Box left = box;
      Box right = std::move(box);
      left.hi[axis] = mid;
      right.lo[axis] = mid + 1.0;
      if (bound(left) && !(found_ && left.upper * (1.0 + 1e-9) < best_)) open.push(std::move(left));
      if (bound(right) && !(found_ && right.upper * (1.0 + 1e-9) < best_)) {
        open.push(std::move(right));
      }
    }
    GridArgmax out;
    out.index = best_index_;
    out.direction = Point(n_);
    for (std::size_t j = 0; j < n_; ++j) out.direction[j] = s_ * best_index_[j];
    out.distance = best_;
    return out;
  }

 private:
  double points_in(const Box& b) const {
    double count = 1.0;
    for (std::size_t j = 0; j < n_; ++j) count *= b.hi[j] - b.lo[j] + 1.0;
    return count;
  }

  // Fills b.upper; false when the box misses the ball.
  bool bound(Box& b) const {
    double near_sq = 0.0;
    double diag_sq = 0.0;
    Point center(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const double lo = s_ * b.lo[j];
      const double hi = s_ * b.hi[j];
      const double z = std::clamp(0.0, lo, hi);
      near_sq += z * z;
      diag_sq += (hi - lo) * (hi - lo);
      center[j] = x_[j] + (lo + hi) / 2.0;
    }
    if (near_sq > r_ * r_ * (1.0 + 1e-12) + 1e-300) return false;
    b.upper = h_.nearest_distance(center) + std::sqrt(diag_sq) / 2.0;
    return true;
  }

  void scan(const Box& b) {
    std::vector<double> idx = b.lo;
    Point d(n_);
    for (;;) {
      for (std::size_t j = 0; j < n_; ++j) d[j] = s_ * idx[j];
      if (d.norm() <= r_) {
        const double value = h_.nearest_distance(x_ + d);
        if (!found_ || value > best_ ||
            (value == best_ && std::lexicographical_compare(idx.begin(), idx.end(),
                                                            best_index_.begin(),
                                                            best_index_.end()))) {
          found_ = true;
          best_ = value;
          best_index_ = idx;
        }
      }
      std::size_t axis = n_;
      while (axis-- > 0) {
        if (idx[axis] < b.hi[axis]) {
          idx[axis] += 1.0;
          break;
        }
        idx[axis] = b.lo[axis];
      }
      if (axis == static_cast<std::size_t>(-1)) return;
    }
  }

  const SpatialIndex& h_;
  const Point& x_;
  double s_;
  double r_;
  std::size_t n_;
  bool found_ = false;
  double best_ = 0.0;
  std::vector<double> best_index_;
};

void check_grid_args(const SpatialIndex& h, const Point& x, double spacing, double r) {
  if (h.empty()) fail(ErrorKind::invalid_argument, "grid argmax needs a nonempty history");
  if (h.dimension() != x.size()) fail(ErrorKind::dimension_mismatch, "history/point dimension");
  if (!(spacing > 0.0) || !(r > 0.0)) {
    fail(ErrorKind::invalid_argument, "grid spacing and radius must be positive");
  }
  if (r / spacing > kMaxGridReach) {
    fail(ErrorKind::capacity, "grid spacing too fine for exact integer coordinates");
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One row or column pass of the separable transform: out[u] = min_i (u-i)^2 + g[i]^2.
void lower_envelope(const std::vector<std::int64_t>& g, std::vector<std::int64_t>& out,
                    std::vector<std::int64_t>& s, std::vector<std::int64_t>& t) {
  const auto m = static_cast<std::int64_t>(g.size());
  auto f = [&](std::int64_t x, std::int64_t i) { return (x - i) * (x - i) + g[i] * g[i]; };
  auto sep = [&](std::int64_t i, std::int64_t u) {
    return (u * u - i * i + g[u] * g[u] - g[i] * g[i]) / (2 * (u - i));
  };
  std::int64_t q = 0;
  s[0] = 0;
  t[0] = 0;
  for (std::int64_t u = 1; u < m; ++u) {
    while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
    if (q < 0) {
      q = 0;
      s[0] = u;
    } else {
      const std::int64_t w = 1 + sep(s[q], u);
      if (w < m) {
        ++q;
        s[q] = u;
        t[q] = w;
      }
    }
  }
  for (std::int64_t u = m - 1; u >= 0; --u) {
    out[u] = f(u, s[q]);
    if (u == t[q]) --q;
  }
}

}  // namespace

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::exact_mesh: return "exact-mesh";
    case OracleKind::exact_grid: return "exact-grid";
    case OracleKind::alpha_sampled: return "alpha-sampled";
    case OracleKind::truncated: return "truncated";
    case OracleKind::zero: return "zero";
  }
  return "unknown";
}

OracleSpec OracleSpec::exact_mesh(double r) {
  OracleSpec s;
  s.kind = OracleKind::exact_mesh;
  s.radius = r;
  s.validate();
  return s;
}

OracleSpec OracleSpec::exact_grid(double r, double spacing, GridBackend backend) {
  OracleSpec s;
  s.kind = OracleKind::exact_grid;
  s.radius = r;
  s.spacing = spacing;
  s.backend = backend;
  s.validate();
  return s;
}

OracleSpec OracleSpec::alpha_sampled(double r, double alpha, std::size_t budget,
                                     SampleSource sampler, std::uint64_t seed) {
  OracleSpec s;
  s.kind = OracleKind::alpha_sampled;
  s.radius = r;
  s.alpha = alpha;
  s.budget = budget;
  s.sampler = sampler;
  s.seed = seed;
  s.validate();
  return s;
}

OracleSpec OracleSpec::truncated(const OracleSpec& inner, double delta_r) {
  OracleSpec s;
  s.kind = OracleKind::truncated;
  s.radius = inner.radius;
  s.delta_r = delta_r;
  s.seed = inner.seed;
  s.inner = std::make_shared<const OracleSpec>(inner);
  s.validate();
  return s;
}

OracleSpec OracleSpec::zero(double r) {
  OracleSpec s;
  s.kind = OracleKind::zero;
  s.radius = r;
  s.validate();
  return s;
}

double OracleSpec::declared_beta() const {
  switch (kind) {
    case OracleKind::alpha_sampled: return alpha;
    case OracleKind::truncated:
      return inner->declared_beta() * delta_r / (2.0 * radius + delta_r);
    default: return 1.0;
  }
}

OracleSpec OracleSpec::with_seed(std::uint64_t s) const {
  OracleSpec out = *this;
  out.seed = s;
  if (inner) out.inner = std::make_shared<const OracleSpec>(inner->with_seed(s));
  return out;
}

void OracleSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorKind::config, "covering radius must be positive and finite");
  }
  switch (kind) {
    case OracleKind::exact_grid:
      if (!(spacing > 0.0) || !(spacing <= radius)) {
        fail(ErrorKind::config, "exact-grid spacing must lie in (0, r]");
      }
      break;
    case OracleKind::alpha_sampled:
      if (budget == 0) fail(ErrorKind::config, "alpha-sampled oracle needs a positive budget");
      if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::config, "alpha must lie in (0, 1]");
      break;
    case OracleKind::truncated:
      if (!inner) fail(ErrorKind::config, "truncated oracle needs an inner oracle");
      if (inner->kind == OracleKind::truncated) {
        fail(ErrorKind::config, "nested truncation is not supported");
      }
      if (!(delta_r > 0.0) || !std::isfinite(delta_r)) {
        fail(ErrorKind::config, "truncation margin must be positive");
      }
      if (inner->radius != radius) fail(ErrorKind::config, "inner oracle radius differs");
      inner->validate();
      break;
    default: break;
  }
}

GridArgmax grid_argmax(const SpatialIndex& h, const Point& x, double spacing, double r) {
  check_grid_args(h, x, spacing, r);
  return GridSearch(h, x, spacing, r).run();
}

GridArgmax grid_argmax_dt(const SpatialIndex& h, const Point& x, double spacing, double r) {
  check_grid_args(h, x, spacing, r);
  if (x.size() != 2) return grid_argmax(h, x, spacing, r);
  // History points beyond 3r from x are more than 2r from every ball point.
  const double half = std::ceil(3.0 * r / spacing);
  const double reach = std::floor(r / spacing) + 1.0;
  const auto side = static_cast<std::size_t>(2.0 * half + 1.0);
  if (static_cast<double>(side) * static_cast<double>(side) > 5e7) {
    return grid_argmax(h, x, spacing, r);
  }
  std::vector<std::uint8_t> occupied(side * side, 0);
  bool any = false;
  for (std::size_t i : h.within(x, 3.0 * r)) {
    const Point& p = h.point(i);
    const double a = std::nearbyint((p[0] - x[0]) / spacing);
    const double b = std::nearbyint((p[1] - x[1]) / spacing);
    if (std::abs(a) > half || std::abs(b) > half) continue;
    occupied[static_cast<std::size_t>(a + half) * side + static_cast<std::size_t>(b + half)] = 1;
    any = true;
  }
  if (!any) return grid_argmax(h, x, spacing, r);
  const DistanceField field = distance_transform_2d(occupied, side, side, spacing);

  // Snapping moves each source by at most e, so the field brackets the true
  // distance within +-e (capped at 2r for sources outside the window). Every
  // point whose upper bound reaches the best lower bound is rescored exactly,
  // which keeps the answer identical to the branch-and-bound search.
  const double e = spacing * std::sqrt(0.5);
  auto field_at = [&](double a, double b) {
    return field.distance[static_cast<std::size_t>(a + half) * side +
                          static_cast<std::size_t>(b + half)];
  };
  Point d(2);
  double lower = -1.0;
  std::size_t in_ball = 0;
  for (double a = -reach; a <= reach; a += 1.0) {
    for (double b = -reach; b <= reach; b += 1.0) {
      d[0] = spacing * a;
      d[1] = spacing * b;
      if (d.norm() > r) continue;
      ++in_ball;
      lower = std::max(lower, std::min(field_at(a, b) - e, 2.0 * r));
    }
  }
  const double threshold = lower - 1e-12 * (1.0 + lower);
  std::vector<std::pair<double, double>> candidates;
  for (double a = -reach; a <= reach; a += 1.0) {
    for (double b = -reach; b <= reach; b += 1.0) {
      d[0] = spacing * a;
      d[1] = spacing * b;
      if (d.norm() > r) continue;
      if (field_at(a, b) + e >= threshold) candidates.emplace_back(a, b);
    }
  }
  if (4 * candidates.size() > in_ball) return grid_argmax(h, x, spacing, r);

  GridArgmax out;
  out.distance = -1.0;
  for (const auto& [a, b] : candidates) {
    d[0] = spacing * a;
    d[1] = spacing * b;
    const double v = h.nearest_distance(x + d);
    if (v > out.distance) {
      out.distance = v;
      out.index = {a, b};
      out.direction = d;
    }
  }
  return out;
}

std::vector<Point> oracle_directions(const OracleSpec& spec, const Point& x,
                                     const SpatialIndex& h, const OracleContext& ctx) {
  spec.validate();
  if (h.dimension() != x.size()) fail(ErrorKind::dimension_mismatch, "history/point dimension");
  const std::size_t n = x.size();
  if (spec.kind == OracleKind::zero) return {Point(n)};
  if (h.empty()) return {Point::unit(n, 0, spec.radius)};
  switch (spec.kind) {
    case OracleKind::exact_mesh: {
      if (ctx.mesh == nullptr || !ctx.mesh->is_lattice()) {
        fail(ErrorKind::config, "exact-mesh oracle requires a lattice mesh");
      }
      return {grid_argmax(h, x, mesh_cell(*ctx.mesh, ctx.nu), spec.radius).direction};
    }
    case OracleKind::exact_grid:
      if (spec.backend == GridBackend::distance_transform) {
        return {grid_argmax_dt(h, x, spec.spacing, spec.radius).direction};
      }
      return {grid_argmax(h, x, spec.spacing, spec.radius).direction};
    case OracleKind::alpha_sampled: {
      // Fresh samples per call, still a pure function of (spec, x, h).
      const std::uint64_t stream =
          spec.sampler == SampleSource::halton
              ? spec.seed + static_cast<std::uint64_t>(h.size()) * spec.budget * 4
              : splitmix64(spec.seed ^ splitmix64(h.size()));
      const std::vector<Point> samples =
          ball_sample(spec.radius, n, spec.budget, spec.sampler, stream);
      return {max_dist_over_candidates(h, x, samples).direction};
    }
    case OracleKind::truncated: {
      SpatialIndex local(n, h.cell_size());
      for (std::size_t i : h.within(x, spec.radius + spec.delta_r)) local.insert(h.point(i));
      return oracle_directions(*spec.inner, x, local, ctx);
    }
    case OracleKind::zero: break;
  }
  return {Point(n)};
}

std::vector<Point> revealing_directions(const RevealingSequence& seq, std::size_t ell) {
  if (!(seq.radius > 0.0)) fail(ErrorKind::invalid_argument, "revealing radius must be positive");
  if (seq.kind == RevealingSequence::Kind::example41_quadrants) {
    if (seq.dimension != 2) fail(ErrorKind::dimension_mismatch, "quadrant cycle needs n = 2");
    const double r = seq.radius;
    switch (ell % 4) {
      case 0: return {Point({r, 0.0})};
      case 1: return {Point({0.0, r})};
      case 2: return {Point({-r, 0.0})};
      default: return {Point({0.0, -r})};
    }
  }
  const int level = static_cast<int>(std::min<std::size_t>(ell / 4, 1000)) + 1;
  return lattice_points_in_ball(seq.dimension, std::ldexp(seq.radius, -level), seq.radius);
}

std::size_t revealing_index(std::span<const double> lower) {
  std::size_t count = 0;
  for (std::size_t u = 0; u + 1 < lower.size(); ++u) {
    if (lower[u + 1] < lower[u]) ++count;
  }
  return count;
}

DistanceField distance_transform_2d(std::span<const std::uint8_t> occupied, std::size_t rows,
                                    std::size_t cols, double spacing) {
  if (rows == 0 || cols == 0 || occupied.size() != rows * cols) {
    fail(ErrorKind::invalid_argument, "occupancy size does not match rows x cols");
  }
  if (!(spacing > 0.0)) fail(ErrorKind::invalid_argument, "spacing must be positive");
  if (std::none_of(occupied.begin(), occupied.end(), [](std::uint8_t v) { return v != 0; })) {
    fail(ErrorKind::invalid_argument, "distance transform of an empty grid");
  }
  const auto inf = static_cast<std::int64_t>(rows + cols);
  // Column pass: vertical distance to the nearest occupied cell.
  std::vector<std::int64_t> g(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    g[c] = occupied[c] ? 0 : inf;
    for (std::size_t r = 1; r < rows; ++r) {
      g[r * cols + c] = occupied[r * cols + c] ? 0 : std::min(inf, g[(r - 1) * cols + c] + 1);
    }
    for (std::size_t r = rows - 1; r-- > 0;) {
      g[r * cols + c] = std::min(g[r * cols + c], g[(r + 1) * cols + c] + 1);
    }
  }
  DistanceField out;
  out.rows = rows;
  out.cols = cols;
  out.squared.resize(rows * cols);
  out.distance.resize(rows * cols);
  std::vector<std::int64_t> line(cols), env(cols), s(cols), t(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(g.begin() + static_cast<std::ptrdiff_t>(r * cols), cols, line.begin());
    lower_envelope(line, env, s, t);
    for (std::size_t c = 0; c < cols; ++c) {
      out.squared[r * cols + c] = env[c];
      out.distance[r * cols + c] = std::sqrt(static_cast<double>(env[c])) * spacing;
    }
  }
  return out;
}

}  // namespace covdsm
