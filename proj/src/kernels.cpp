// Copyright 2026 The binomap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "binomap/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace binomap::kernels {

namespace {

// (distance, index) ordering: smaller distance first, then smaller index.
bool closer(double d, std::size_t i, const IndexedDistance& best) {
  return d < best.squared_distance || (d == best.squared_distance && i < best.index);
}

bool farther(double d, std::size_t i, const IndexedDistance& best) {
  return d > best.squared_distance || (d == best.squared_distance && i < best.index);
}

bool aligned(const Eigen::Vector3d& diff, const Eigen::Vector3d& axis, double cos_tolerance,
             double* length) {
  const double n = diff.norm();
  if (n == 0.0) return false;
  *length = n;
  return std::abs(diff.dot(axis)) >= cos_tolerance * n;
}

long long pixel_distance_sq(const OrganizedGrid& grid, std::size_t i, int u, int v) {
  const long long pu = static_cast<long long>(i % static_cast<std::size_t>(grid.width));
  const long long pv = static_cast<long long>(i / static_cast<std::size_t>(grid.width));
  const long long du = pu - u;
  const long long dv = pv - v;
  return du * du + dv * dv;
}

}  // namespace

namespace serial {

IndexedDistance nearest(std::span<const Point3> points, const Point3& query) {
  IndexedDistance best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = (points[i] - query).squaredNorm();
    if (closer(d, i, best)) best = {d, i};
  }
  return best;
}

IndexedDistance farthest(std::span<const Point3> points, const Point3& query) {
  IndexedDistance best{-1.0, 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = (points[i] - query).squaredNorm();
    if (farther(d, i, best)) best = {d, i};
  }
  return best;
}

std::optional<double> max_aligned_pair(std::span<const Point3> points,
                                       const Eigen::Vector3d& axis, double cos_tolerance) {
  double best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double len = 0.0;
      if (aligned(points[j] - points[i], axis, cos_tolerance, &len) && len > best) best = len;
    }
  }
  if (best < 0.0) return std::nullopt;
  return best;
}

std::optional<std::size_t> nearest_valid_pixel(const OrganizedGrid& grid, int u, int v) {
  std::optional<std::size_t> best;
  long long best_d = std::numeric_limits<long long>::max();
  for (std::size_t i = 0; i < grid.valid.size(); ++i) {
    if (!grid.valid[i]) continue;
    const long long d = pixel_distance_sq(grid, i, u, v);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double max_halfspace_value(std::span<const Plane> halfspaces, const Point3& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Plane& h : halfspaces) best = std::max(best, h.signed_distance(p));
  return best;
}

}  // namespace serial

IndexedDistance nearest(std::span<const Point3> points, const Point3& query) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
  if (points.size() < kParallelThreshold) return serial::nearest(points, query);

  IndexedDistance best{std::numeric_limits<double>::infinity(), 0};
#pragma omp parallel
  {
    IndexedDistance local{std::numeric_limits<double>::infinity(), 0};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double d = (points[idx] - query).squaredNorm();
      if (closer(d, idx, local)) local = {d, idx};
    }
#pragma omp critical(binomap_nearest)
    if (closer(local.squared_distance, local.index, best)) best = local;
  }
  return best;
}

IndexedDistance farthest(std::span<const Point3> points, const Point3& query) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
  if (points.size() < kParallelThreshold) return serial::farthest(points, query);

  IndexedDistance best{-1.0, 0};
#pragma omp parallel
  {
    IndexedDistance local{-1.0, 0};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double d = (points[idx] - query).squaredNorm();
      if (farther(d, idx, local)) local = {d, idx};
    }
#pragma omp critical(binomap_farthest)
    if (farther(local.squared_distance, local.index, best)) best = local;
  }
  return best;
}

std::optional<double> max_aligned_pair(std::span<const Point3> points,
                                       const Eigen::Vector3d& axis, double cos_tolerance) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
  // Pair count, not point count, decides whether threads pay off.
  if (points.size() < 128) return serial::max_aligned_pair(points, axis, cos_tolerance);

  double best = -1.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      double len = 0.0;
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      if (aligned(points[b] - points[a], axis, cos_tolerance, &len) && len > best) best = len;
    }
  }
  if (best < 0.0) return std::nullopt;
  return best;
}

std::optional<std::size_t> nearest_valid_pixel(const OrganizedGrid& grid, int u, int v) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.valid.size());
  if (grid.valid.size() < kParallelThreshold) return serial::nearest_valid_pixel(grid, u, v);

  long long best_d = std::numeric_limits<long long>::max();
  std::size_t best_i = std::numeric_limits<std::size_t>::max();
#pragma omp parallel
  {
    long long local_d = std::numeric_limits<long long>::max();
    std::size_t local_i = std::numeric_limits<std::size_t>::max();
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (!grid.valid[i]) continue;
      const long long d = pixel_distance_sq(grid, i, u, v);
      if (d < local_d || (d == local_d && i < local_i)) {
        local_d = d;
        local_i = i;
      }
    }
#pragma omp critical(binomap_pixel)
    if (local_d < best_d || (local_d == best_d && local_i < best_i)) {
      best_d = local_d;
      best_i = local_i;
    }
  }
  if (best_i == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best_i;
}

double max_halfspace_value(std::span<const Plane> halfspaces, const Point3& p) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(halfspaces.size());
  if (halfspaces.size() < kParallelThreshold) return serial::max_halfspace_value(halfspaces, p);

  double best = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    best = std::max(best, halfspaces[static_cast<std::size_t>(i)].signed_distance(p));
  }
  return best;
}

}  // namespace binomap::kernels
