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

#include "binomap/hand_retarget.hpp"

#include <cmath>
#include <map>
#include <set>

#include "binomap/error.hpp"
#include "binomap/kernels.hpp"

namespace binomap {

void JointIndexConfig::validate() const {
  const std::set<int> distinct{wrist, thumb_tip, index_tip, ring_tip};
  if (distinct.size() != 4) throw Error(ErrorKind::InvalidConfig, "joint indices must be distinct");
  for (int i : distinct) {
    if (i < 0 || i >= static_cast<int>(kHandJointCount)) {
      throw Error(ErrorKind::InvalidConfig, "joint index out of [0, 21)");
    }
  }
}

Rotation hand_pose(const HandFrame& frame, const JointIndexConfig& cfg) {
  const Point3& wrist = frame.joints[static_cast<std::size_t>(cfg.wrist)];
  const Eigen::Vector3d l_iw = frame.joints[static_cast<std::size_t>(cfg.index_tip)] - wrist;
  const Eigen::Vector3d l_rw = frame.joints[static_cast<std::size_t>(cfg.ring_tip)] - wrist;

  const Eigen::Vector3d z = l_iw.cross(l_rw);
  const double z_norm = z.norm();
  if (!(z_norm > 1e-8)) {
    throw Error(ErrorKind::DegenerateHand, "index and ring fingers are collinear with the wrist",
                frame.frame_index);
  }
  const Eigen::Vector3d vz = z / z_norm;
  // (l_iw + l_rw)/2 lies in span{l_iw, l_rw} and is therefore orthogonal to vz.
  const Eigen::Vector3d vy = ((l_iw + l_rw) / 2.0).normalized();
  const Eigen::Vector3d vx = vy.cross(vz);

  Rotation r;
  r.col(0) = vx;
  r.col(1) = vy;
  r.col(2) = vz;
  return r;
}

Point3 contact_point(const HandFrame& frame, const JointIndexConfig& cfg) {
  return (frame.joints[static_cast<std::size_t>(cfg.thumb_tip)] +
          frame.joints[static_cast<std::size_t>(cfg.index_tip)]) /
         2.0;
}

Pixel project_point(const Point3& p, const CameraIntrinsics& k) {
  if (!(p.z() > 0.0)) throw Error(ErrorKind::BehindCamera, "point is behind the camera");
  const double u = k.fx * p.x() / p.z() + k.cx;
  const double v = k.fy * p.y() / p.z() + k.cy;
  return Pixel{static_cast<int>(std::lround(u)), static_cast<int>(std::lround(v))};
}

Point3 lift_to_scene(Pixel pixel, const PointCloud& scene) {
  const OrganizedGrid& grid = scene.grid();
  if (!grid.contains(pixel.u, pixel.v)) {
    throw Error(ErrorKind::PreconditionViolation,
                "pixel (" + std::to_string(pixel.u) + "," + std::to_string(pixel.v) +
                    ") is outside the " + std::to_string(grid.width) + "x" +
                    std::to_string(grid.height) + " image");
  }
  const std::size_t direct = grid.index(pixel.u, pixel.v);
  if (grid.valid[direct]) return scene[direct];
  const auto nearest = kernels::nearest_valid_pixel(grid, pixel.u, pixel.v);
  if (!nearest) throw Error(ErrorKind::NoValidPoint, "scene has no valid pixel");
  return scene[*nearest];
}

BimanualTrajectory extract_coarse(const HandSequence& seq, const PointCloud& scene,
                                  const CameraModel& camera, const JointIndexConfig& cfg) {
  cfg.validate();
  if (seq.t_s > seq.t_e) throw Error(ErrorKind::DegenerateInput, "t_s must not exceed t_e");

  auto index_frames = [](const std::vector<HandFrame>& frames) {
    std::map<std::int64_t, const HandFrame*> by_index;
    for (const HandFrame& f : frames) by_index[f.frame_index] = &f;
    return by_index;
  };
  const auto left = index_frames(seq.left);
  const auto right = index_frames(seq.right);

  const Rotation world_rotation = camera.world_from_camera.linear();
  auto retarget = [&](const HandFrame& frame) {
    try {
      const Pixel px = project_point(contact_point(frame, cfg), camera.intrinsics);
      Pose pose;
      pose.position = camera.world_from_camera * lift_to_scene(px, scene);
      pose.orientation = world_rotation * hand_pose(frame, cfg);
      return pose;
    } catch (Error& e) {
      e.with_frame(frame.frame_index);
      throw;
    }
  };

  BimanualTrajectory out;
  const auto n = static_cast<std::size_t>(seq.t_e - seq.t_s + 1);
  out.timesteps.reserve(n);
  out.left.reserve(n);
  out.right.reserve(n);
  for (std::int64_t t = seq.t_s; t <= seq.t_e; ++t) {
    const auto l = left.find(t);
    const auto r = right.find(t);
    if (l == left.end() || r == right.end()) {
      throw Error(ErrorKind::DegenerateInput,
                  std::string(l == left.end() ? "left" : "right") + " hand missing in frame " +
                      std::to_string(t),
                  t);
    }
    out.timesteps.push_back(t);
    out.left.push_back(retarget(*l->second));
    out.right.push_back(retarget(*r->second));
  }
  return out;
}

}  // namespace binomap
