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

#include "binomap/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "binomap/error.hpp"
#include "binomap/kernels.hpp"

namespace binomap {

PointCloud::PointCloud(std::vector<Point3> points) : points_(std::move(points)) {}

PointCloud PointCloud::organized(int height, int width, std::vector<Point3> points,
                                 std::vector<std::uint8_t> valid) {
  if (height <= 0 || width <= 0) {
    throw Error(ErrorKind::FormatError, "organized cloud needs positive height and width");
  }
  const auto n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  if (points.size() != n || valid.size() != n) {
    throw Error(ErrorKind::FormatError,
                "organized cloud expects height*width points and mask entries");
  }
  PointCloud cloud(std::move(points));
  cloud.grid_ = OrganizedGrid{height, width, std::move(valid)};
  return cloud;
}

const OrganizedGrid& PointCloud::grid() const {
  if (!grid_) throw Error(ErrorKind::PreconditionViolation, "point cloud is not organized");
  return *grid_;
}

Point3 PointCloud::centroid() const { return binomap::centroid(points_); }

PointCloud PointCloud::transformed(const Eigen::Isometry3d& transform) const {
  PointCloud out = *this;
  for (Point3& p : out.points_) p = transform * p;
  return out;
}

Point3 centroid(std::span<const Point3> points) {
  if (points.empty()) throw Error(ErrorKind::DegenerateInput, "centroid of an empty point set");
  Point3 sum = Point3::Zero();
  for (const Point3& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

Plane fit_plane(std::span<const Point3> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::DegenerateInput, "plane fit needs at least 3 points");
  }
  const Point3 c = centroid(points);
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const Point3& p : points) {
    const Eigen::Vector3d d = p - c;
    scatter.noalias() += d * d.transpose();
  }

  // Ascending eigenvalues; the smallest one is the fit residual.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  const Eigen::Vector3d lambda = eig.eigenvalues();
  if (lambda(2) <= 0.0 || lambda(1) <= 1e-12 * lambda(2)) {
    throw Error(ErrorKind::DegenerateInput, "points are collinear or coincident");
  }

  Eigen::Vector3d n = eig.eigenvectors().col(0).normalized();
  Eigen::Index k = 0;
  n.cwiseAbs().maxCoeff(&k);
  if (n(k) < 0.0) n = -n;
  return Plane{n, -n.dot(c)};
}

double plane_residual(std::span<const Point3> points, const Plane& plane) {
  double sum = 0.0;
  for (const Point3& p : points) {
    const double r = plane.signed_distance(p);
    sum += r * r;
  }
  return sum;
}

Point3 project_to_plane(const Point3& p, const Plane& plane) {
  return p - plane.signed_distance(p) * plane.normal;
}

bool is_rotation(const Rotation& r, double tolerance) {
  if (!r.allFinite()) return false;
  const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).norm();
  return ortho <= tolerance && std::abs(r.determinant() - 1.0) <= tolerance;
}

UnitQuaternion rotation_to_quat(const Rotation& r) {
  if (!is_rotation(r, 1e-4)) {
    throw Error(ErrorKind::InvalidRotation, "matrix is not a proper rotation");
  }
  UnitQuaternion q(r);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  return q;
}

Rotation quat_to_rotation(const UnitQuaternion& q) { return q.normalized().toRotationMatrix(); }

namespace {

// Angle of the relative rotation conj(a) * b, measured on the quaternion
// half-angle with atan2 so that small and near-pi angles stay accurate.
double half_angle(const UnitQuaternion& a, const UnitQuaternion& b) {
  const double w = a.dot(b);
  const Eigen::Vector3d v = a.w() * b.vec() - b.w() * a.vec() - a.vec().cross(b.vec());
  return std::atan2(v.norm(), std::abs(w));
}

}  // namespace

UnitQuaternion slerp(const UnitQuaternion& qi, const UnitQuaternion& qj, double alpha) {
  double dot = qi.dot(qj);
  Eigen::Vector4d target = qj.coeffs();
  if (dot < 0.0) {
    target = -target;
    dot = -dot;
  }
  if (dot > 1.0 - 1e-10 || alpha == 0.0) return qi;
  if (alpha == 1.0) {
    UnitQuaternion end;
    end.coeffs() = target;
    return end;
  }

  const double theta = half_angle(qi, qj);
  const double sin_theta = std::sin(theta);
  const double wi = std::sin((1.0 - alpha) * theta) / sin_theta;
  const double wj = std::sin(alpha * theta) / sin_theta;
  UnitQuaternion out;
  out.coeffs() = wi * qi.coeffs() + wj * target;
  out.normalize();
  return out;
}

double rotation_angle(const UnitQuaternion& a, const UnitQuaternion& b) {
  return 2.0 * half_angle(a.normalized(), b.normalized());
}

double rotation_angle(const Rotation& a, const Rotation& b) {
  return rotation_angle(UnitQuaternion(a), UnitQuaternion(b));
}

NearestPoint min_distance(const Point3& p, std::span<const Point3> points) {
  if (points.empty()) {
    throw Error(ErrorKind::DegenerateInput, "distance query against an empty cloud");
  }
  const kernels::IndexedDistance best = kernels::nearest(points, p);
  return NearestPoint{std::sqrt(best.squared_distance), points[best.index], best.index};
}

NearestPoint min_distance(const Point3& p, const PointCloud& cloud) {
  return min_distance(p, cloud.points());
}

}  // namespace binomap
