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
#include <vector>

#include "binomap/geometry.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

struct SmoothConfig {
  /// Intermediate anchor frames kept fixed for rotational interpolation.
  int top_n = 3;
  /// 0 selects max(4, ceil(length / 3)).
  int spline_control_points = 0;
  double spline_smoothing_weight = 0.0;

  int control_points_for(std::size_t length) const;
  void validate() const;
};

/// Strictly increasing frame indices including the first and last frame.
struct AnchorSet {
  std::vector<std::size_t> indices;
};

struct SmoothedPositions {
  std::vector<Point3> smoothed;
  Plane plane;
  /// |raw_i - smoothed_i|
  std::vector<double> deviations;
};

/// Coplanar projection followed by an in-plane least-squares cubic B-spline
/// (chord-length parameters, endpoint interpolating). Needs >= 4 points that
/// do not all coincide; collinear input is smoothed in a plane through the line.
SmoothedPositions smooth_positions(std::span<const Point3> points, const SmoothConfig& cfg);

/// {first, last} plus the top_n intermediate frames with the smallest
/// deviation (lower index wins ties), ascending.
AnchorSet select_anchors(std::span<const double> deviations, const SmoothConfig& cfg);

/// Anchor rotations are kept; frame i + r between anchors i < j gets
/// slerp(q_i, q_j, r / (j - i)).
std::vector<Rotation> smooth_rotations(std::span<const Rotation> rotations,
                                       const AnchorSet& anchors);

struct ArmSmoothing {
  Plane plane;
  std::vector<double> deviations;
  AnchorSet anchors;
};

struct SmoothResult {
  BimanualTrajectory trajectory;
  ArmSmoothing left;
  ArmSmoothing right;

  const ArmSmoothing& arm(Arm a) const { return a == Arm::Left ? left : right; }
};

/// smooth_positions -> select_anchors -> smooth_rotations, independently per arm.
SmoothResult smooth_trajectory(const BimanualTrajectory& traj, const SmoothConfig& left_cfg,
                               const SmoothConfig& right_cfg);

}  // namespace binomap
