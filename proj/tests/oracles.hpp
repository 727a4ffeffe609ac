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

// Independent reference computations the library is checked against. None of
// these call into binomap's numerical code.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "binomap/geometry.hpp"

namespace binomap::oracle {

/// Plane normal from the right singular vector of the centered data with the
/// smallest singular value.
inline Eigen::Vector3d svd_normal(const std::vector<Point3>& pts) {
  Eigen::MatrixXd a(pts.size(), 3);
  Point3 mean = Point3::Zero();
  for (const Point3& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = (pts[i] - mean).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  return svd.matrixV().col(2);
}

/// Angle between two lines through the origin, in [0, pi/2].
inline double line_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double c = std::abs(a.normalized().dot(b.normalized()));
  const double s = a.normalized().cross(b.normalized()).norm();
  return std::atan2(s, c);
}

inline double brute_min_distance(const std::vector<Point3>& pts, const Point3& q) {
  double best = INFINITY;
  for (const Point3& p : pts) best = std::min(best, (p - q).norm());
  return best;
}

inline Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

/// Rotation angle of R via the trace, clamped.
inline double angle_of(const Rotation& r) {
  return std::acos(std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0));
}

/// Geodesic angle through the axis-angle of R_a^T R_b.
inline double geodesic(const Rotation& a, const Rotation& b) {
  return Eigen::AngleAxisd(a.transpose() * b).angle();
}

}  // namespace binomap::oracle
