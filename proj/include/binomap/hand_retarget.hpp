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
#include <cstdint>
#include <vector>

#include "binomap/geometry.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

inline constexpr std::size_t kHandJointCount = 21;

struct HandFrame {
  std::array<Point3, kHandJointCount> joints;
  Arm handedness = Arm::Left;
  std::int64_t frame_index = 0;
};

/// Per-hand frame lists plus the manually chosen [t_s, t_e] window.
struct HandSequence {
  std::vector<HandFrame> left;
  std::vector<HandFrame> right;
  std::int64_t t_s = 0;
  std::int64_t t_e = 0;
};

/// Indices into the 21-joint layout (wrist 0, thumb tip 4, index tip 8,
/// ring tip 16 by default).
struct JointIndexConfig {
  int wrist = 0;
  int thumb_tip = 4;
  int index_tip = 8;
  int ring_tip = 16;

  /// Throws InvalidConfig on out-of-range or repeated indices.
  void validate() const;
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
};

/// Intrinsics plus the camera pose in the world frame. Lifted points and
/// hand orientations are expressed in the world frame.
struct CameraModel {
  CameraIntrinsics intrinsics;
  Eigen::Isometry3d world_from_camera = Eigen::Isometry3d::Identity();
};

struct Pixel {
  int u = 0;
  int v = 0;
  bool operator==(const Pixel&) const = default;
};

/// Hand orientation from wrist, index-tip and ring-tip joints:
///   v_z = normalize(l_iw x l_rw), v_y = normalize((l_iw + l_rw) / 2),
///   v_x = v_y x v_z, R = [v_x | v_y | v_z].
/// Throws DegenerateHand when |l_iw x l_rw| <= 1e-8.
Rotation hand_pose(const HandFrame& frame, const JointIndexConfig& cfg);

/// Midpoint of the thumb and index fingertips.
Point3 contact_point(const HandFrame& frame, const JointIndexConfig& cfg);

/// Pinhole projection rounded to the nearest pixel. Throws BehindCamera for z <= 0.
Pixel project_point(const Point3& p_camera, const CameraIntrinsics& intrinsics);

/// Scene point stored at (u, v), or at the nearest valid pixel (Euclidean
/// pixel distance, row-major first on ties) when (u, v) is masked out.
/// Throws PreconditionViolation outside the image, NoValidPoint if nothing is valid.
Point3 lift_to_scene(Pixel pixel, const PointCloud& scene);

/// Stage 1: per frame and hand, position = lift(project(contact point)) and
/// orientation = hand_pose, both mapped into the world frame; clipped to [t_s, t_e].
BimanualTrajectory extract_coarse(const HandSequence& seq, const PointCloud& scene,
                                  const CameraModel& camera, const JointIndexConfig& cfg);

}  // namespace binomap
