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

#pragma once

// Data-parallel scans used by the geometry, retargeting, oracle and
// parameterization code. The top-level functions run under OpenMP; the
// `serial` namespace holds the reference loops they are tested against.
// Both variants evaluate the same per-element expression, so results agree
// bitwise, including lowest-index tie breaking.

#include <cstddef>
#include <optional>
#include <span>

#include "binomap/geometry.hpp"

namespace binomap::kernels {

struct IndexedDistance {
  double squared_distance = 0.0;
  std::size_t index = 0;
};

/// Below this many elements the parallel kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = 4096;

namespace serial {

IndexedDistance nearest(std::span<const Point3> points, const Point3& query);
IndexedDistance farthest(std::span<const Point3> points, const Point3& query);

/// Largest |u - v| over pairs whose direction is within acos(cos_tolerance)
/// of +-axis. nullopt if no pair qualifies.
std::optional<double> max_aligned_pair(std::span<const Point3> points,
                                       const Eigen::Vector3d& axis, double cos_tolerance);

/// Valid pixel minimizing squared pixel distance to (u, v); row-major first
/// on ties. nullopt if the mask has no valid entry.
std::optional<std::size_t> nearest_valid_pixel(const OrganizedGrid& grid, int u, int v);

/// max_f (n_f . p + b_f): positive outside a convex polytope given by
/// outward half-spaces, minus the boundary distance inside.
double max_halfspace_value(std::span<const Plane> halfspaces, const Point3& p);

}  // namespace serial

IndexedDistance nearest(std::span<const Point3> points, const Point3& query);
IndexedDistance farthest(std::span<const Point3> points, const Point3& query);
std::optional<double> max_aligned_pair(std::span<const Point3> points,
                                       const Eigen::Vector3d& axis, double cos_tolerance);
std::optional<std::size_t> nearest_valid_pixel(const OrganizedGrid& grid, int u, int v);
double max_halfspace_value(std::span<const Plane> halfspaces, const Point3& p);

}  // namespace binomap::kernels
