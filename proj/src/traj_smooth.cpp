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

#include "binomap/traj_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "binomap/bspline.hpp"
#include "binomap/error.hpp"

namespace binomap {

int SmoothConfig::control_points_for(std::size_t length) const {
  if (spline_control_points > 0) return spline_control_points;
  const auto third = static_cast<int>((length + 2) / 3);
  return std::max(4, third);
}

void SmoothConfig::validate() const {
  if (top_n < 0) throw Error(ErrorKind::InvalidConfig, "top_n must be >= 0");
  if (spline_control_points != 0 && spline_control_points < 4) {
    throw Error(ErrorKind::InvalidConfig, "spline_control_points must be >= 4 (or 0 for default)");
  }
  if (!(spline_smoothing_weight >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "spline_smoothing_weight must be >= 0");
  }
}

namespace {

// Orthonormal in-plane axes (e1, e2) with e1 x e2 = n.
std::pair<Eigen::Vector3d, Eigen::Vector3d> plane_chart(const Eigen::Vector3d& n) {
  Eigen::Index k = 0;
  n.cwiseAbs().minCoeff(&k);
  const Eigen::Vector3d seed = Eigen::Vector3d::Unit(k);
  const Eigen::Vector3d e1 = n.cross(seed).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  return {e1, e2};
}

// fit_plane, except that collinear input gets a deterministic plane through
// the line instead of an error. Coincident points still throw.
Plane smoothing_plane(std::span<const Point3> points) {
  const Point3 c = centroid(points);
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const Point3& p : points) scatter.noalias() += (p - c) * (p - c).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  const Eigen::Vector3d lambda = eig.eigenvalues();
  if (!(lambda(2) > 0.0)) throw Error(ErrorKind::DegenerateInput, "all points coincide");
  if (lambda(1) > 1e-12 * lambda(2)) return fit_plane(points);

  const Eigen::Vector3d dir = eig.eigenvectors().col(2);
  Eigen::Index k = 0;
  dir.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d n = dir.cross(Eigen::Vector3d::Unit(k)).normalized();
  Eigen::Index big = 0;
  n.cwiseAbs().maxCoeff(&big);
  if (n(big) < 0.0) n = -n;
  return Plane{n, -n.dot(c)};
}

}  // namespace

SmoothedPositions smooth_positions(std::span<const Point3> points, const SmoothConfig& cfg) {
  cfg.validate();
  if (points.size() < 4) {
    throw Error(ErrorKind::DegenerateInput,
                "smoothing needs at least 4 points, got " + std::to_string(points.size()));
  }
  const Plane plane = smoothing_plane(points);
  const auto [e1, e2] = plane_chart(plane.normal);
  const Point3 origin = project_to_plane(centroid(points), plane);

  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd chart(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector3d d = project_to_plane(points[static_cast<std::size_t>(i)], plane) - origin;
    chart(i, 0) = d.dot(e1);
    chart(i, 1) = d.dot(e2);
  }

  const std::vector<double> params = chord_length_parameters(chart);
  const int control = cfg.control_points_for(points.size());
  if (control > static_cast<int>(points.size())) {
    throw Error(ErrorKind::InvalidConfig, "more spline control points than trajectory samples");
  }
  const CubicBSpline spline =
      CubicBSpline::fit(chart, params, control, cfg.spline_smoothing_weight);

  SmoothedPositions out;
  out.plane = plane;
  out.smoothed.reserve(points.size());
  out.deviations.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Eigen::Vector2d uv;
    if (i == 0) {
      uv = chart.row(0).transpose();
    } else if (i + 1 == points.size()) {
      uv = chart.row(m - 1).transpose();
    } else {
      uv = spline.evaluate(params[i]);
    }
    const Point3 p = origin + uv.x() * e1 + uv.y() * e2;
    out.smoothed.push_back(p);
    out.deviations.push_back((points[i] - p).norm());
  }
  return out;
}

AnchorSet select_anchors(std::span<const double> deviations, const SmoothConfig& cfg) {
  if (deviations.empty()) throw Error(ErrorKind::DegenerateInput, "no frames to anchor");
  const std::size_t n = deviations.size();
  AnchorSet anchors;
  anchors.indices.push_back(0);
  if (n == 1) return anchors;

  std::vector<std::size_t> middle(n - 2);
  std::iota(middle.begin(), middle.end(), std::size_t{1});
  std::stable_sort(middle.begin(), middle.end(), [&](std::size_t a, std::size_t b) {
    return deviations[a] < deviations[b];
  });
  const std::size_t take = std::min(static_cast<std::size_t>(std::max(cfg.top_n, 0)), middle.size());
  anchors.indices.insert(anchors.indices.end(), middle.begin(),
                         middle.begin() + static_cast<std::ptrdiff_t>(take));
  anchors.indices.push_back(n - 1);
  std::sort(anchors.indices.begin(), anchors.indices.end());
  return anchors;
}

std::vector<Rotation> smooth_rotations(std::span<const Rotation> rotations,
                                       const AnchorSet& anchors) {
  const std::vector<std::size_t>& k = anchors.indices;
  if (rotations.empty()) return {};
  if (k.empty() || k.front() != 0 || k.back() != rotations.size() - 1 ||
      !std::is_sorted(k.begin(), k.end()) ||
      std::adjacent_find(k.begin(), k.end()) != k.end()) {
    throw Error(ErrorKind::PreconditionViolation,
                "anchors must be strictly increasing and contain both endpoints");
  }

  std::vector<Rotation> out(rotations.begin(), rotations.end());
  for (std::size_t s = 0; s + 1 < k.size(); ++s) {
    const std::size_t i = k[s];
    const std::size_t j = k[s + 1];
    if (j - i < 2) continue;
    const UnitQuaternion qi = rotation_to_quat(rotations[i]);
    const UnitQuaternion qj = rotation_to_quat(rotations[j]);
    const double steps = static_cast<double>(j - i);
    for (std::size_t r = 1; i + r < j; ++r) {
      out[i + r] = quat_to_rotation(slerp(qi, qj, static_cast<double>(r) / steps));
    }
  }
  return out;
}

SmoothResult smooth_trajectory(const BimanualTrajectory& traj, const SmoothConfig& left_cfg,
                               const SmoothConfig& right_cfg) {
  traj.validate();
  SmoothResult result;
  result.trajectory = traj;

  for (Arm a : {Arm::Left, Arm::Right}) {
    const SmoothConfig& cfg = a == Arm::Left ? left_cfg : right_cfg;
    ArmSmoothing& diag = a == Arm::Left ? result.left : result.right;
    try {
      const std::vector<Point3> raw = traj.positions(a);
      SmoothedPositions pos = smooth_positions(raw, cfg);
      diag.anchors = select_anchors(pos.deviations, cfg);
      const std::vector<Rotation> rot = smooth_rotations(traj.orientations(a), diag.anchors);

      std::vector<Pose>& poses = result.trajectory.arm(a);
      for (std::size_t i = 0; i < poses.size(); ++i) {
        poses[i].position = pos.smoothed[i];
        poses[i].orientation = rot[i];
      }
      diag.plane = pos.plane;
      diag.deviations = std::move(pos.deviations);
    } catch (Error& e) {
      throw Error(e.kind(), std::string(to_string(a)) + " arm: " + e.what(), e.frame_index());
    }
  }
  return result;
}

}  // namespace binomap
