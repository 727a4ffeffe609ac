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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace binomap {

/// Positions are in meters, angles in radians.
using Point3 = Eigen::Vector3d;

/// Columns are the body axes [v_x | v_y | v_z].
using Rotation = Eigen::Matrix3d;

using UnitQuaternion = Eigen::Quaterniond;

/// n^T p + b = 0, with |n| = 1.
struct Plane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;

  double signed_distance(const Point3& p) const { return normal.dot(p) + offset; }
};

/// Pixel grid attached to an organized cloud. Points are stored row-major,
/// index = v * width + u.
struct OrganizedGrid {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> valid;

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(u);
  }
  bool contains(int u, int v) const { return u >= 0 && v >= 0 && u < width && v < height; }
};

class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Point3> points);

  /// Throws FormatError unless points.size() == valid.size() == height * width.
  static PointCloud organized(int height, int width, std::vector<Point3> points,
                              std::vector<std::uint8_t> valid);

  std::span<const Point3> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }

  bool is_organized() const { return grid_.has_value(); }
  const OrganizedGrid& grid() const;

  /// Mean of all points. Throws DegenerateInput when empty.
  Point3 centroid() const;

  PointCloud transformed(const Eigen::Isometry3d& transform) const;

 private:
  std::vector<Point3> points_;
  std::optional<OrganizedGrid> grid_;
};

Point3 centroid(std::span<const Point3> points);

// ---------------------------------------------------------------------------
// Plane fitting

/// Least-squares plane: minimizes sum (n^T p + b)^2 subject to |n| = 1.
/// The normal's largest-magnitude component is made positive.
/// Throws DegenerateInput for fewer than 3 points or collinear input.
Plane fit_plane(std::span<const Point3> points);

/// sum (n^T p + b)^2 over the points.
double plane_residual(std::span<const Point3> points, const Plane& plane);

Point3 project_to_plane(const Point3& p, const Plane& plane);

// ---------------------------------------------------------------------------
// Rotations

bool is_rotation(const Rotation& r, double tolerance = 1e-6);

/// Throws InvalidRotation if |R^T R - I| or |det R - 1| exceeds 1e-4.
/// The returned quaternion has w >= 0.
UnitQuaternion rotation_to_quat(const Rotation& r);
Rotation quat_to_rotation(const UnitQuaternion& q);

/// Shortest-arc spherical interpolation q_i (q_i^-1 q_j)^alpha.
/// Returns q_i when |dot(q_i, q_j)| > 1 - 1e-10.
UnitQuaternion slerp(const UnitQuaternion& qi, const UnitQuaternion& qj, double alpha);

/// Geodesic angle in [0, pi] between the rotations represented by a and b.
double rotation_angle(const UnitQuaternion& a, const UnitQuaternion& b);
double rotation_angle(const Rotation& a, const Rotation& b);

// ---------------------------------------------------------------------------
// Nearest neighbor

struct NearestPoint {
  double distance = 0.0;
  Point3 point = Point3::Zero();
  std::size_t index = 0;
};

/// Exact nearest cloud point (lowest index on ties). Throws DegenerateInput
/// on an empty cloud.
NearestPoint min_distance(const Point3& p, const PointCloud& cloud);
NearestPoint min_distance(const Point3& p, std::span<const Point3> points);

}  // namespace binomap
