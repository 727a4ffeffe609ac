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

#include <array>
#include <span>
#include <vector>

#include "binomap/geometry.hpp"

namespace binomap {

/// 3D convex hull (Quickhull). Facet planes have outward normals.
class ConvexHull {
 public:
  /// Throws DegenerateInput for fewer than 4 points or (near-)coplanar input.
  explicit ConvexHull(std::span<const Point3> points);

  std::span<const Plane> facets() const { return planes_; }
  std::span<const std::array<std::size_t, 3>> triangles() const { return triangles_; }

  /// Distance from p to the hull boundary if p is inside (>= 0), negative
  /// (minus the largest facet violation) if outside.
  double depth(const Point3& p) const;
  bool contains(const Point3& p) const { return depth(p) >= -tolerance_; }

  double tolerance() const { return tolerance_; }

 private:
  std::vector<Plane> planes_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  double tolerance_ = 0.0;
};

}  // namespace binomap
