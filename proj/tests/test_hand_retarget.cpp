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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "binomap/error.hpp"
#include "binomap/hand_retarget.hpp"
#include "oracles.hpp"

using namespace binomap;

namespace {

HandFrame frame_from(const Point3& wrist, const Point3& index, const Point3& ring, const Point3& thumb,
                     std::int64_t t = 0, Arm arm = Arm::Left) {
  HandFrame f;
  for (auto& j : f.joints) j = wrist;
  f.joints[0] = wrist;
  f.joints[4] = thumb;
  f.joints[8] = index;
  f.joints[16] = ring;
  f.frame_index = t;
  f.handedness = arm;
  return f;
}

// Flat organized cloud: plane z = depth seen by a camera with the given intrinsics.
PointCloud depth_plane(int w, int h, const CameraIntrinsics& k, double depth) {
  std::vector<Point3> pts;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) pts.emplace_back((u - k.cx) / k.fx * depth, (v - k.cy) / k.fy * depth, depth);
  }
  return PointCloud::organized(h, w, std::move(pts), std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), 1));
}

}  // namespace

TEST(HandPose, HandComputedExample) {
  const HandFrame f = frame_from({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 0});
  const Rotation r = hand_pose(f, JointIndexConfig{});
  const double h = std::sqrt(0.5);
  EXPECT_TRUE(r.col(2).isApprox(Eigen::Vector3d(0, 0, 1), 1e-15));
  EXPECT_TRUE(r.col(1).isApprox(Eigen::Vector3d(h, h, 0), 1e-15));
  EXPECT_TRUE(r.col(0).isApprox(Eigen::Vector3d(h, -h, 0), 1e-15));
}

TEST(HandPose, OrthonormalAndInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int i = 0; i < 500; ++i) {
    const Point3 w(u(rng), u(rng), u(rng) + 0.5), a(u(rng), u(rng), u(rng) + 0.5), b(u(rng), u(rng), u(rng) + 0.5);
    const Rotation r = hand_pose(frame_from(w, a, b, w), JointIndexConfig{});
    EXPECT_LT((r.transpose() * r - Rotation::Identity()).norm(), 1e-9);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
    const Rotation scaled = hand_pose(frame_from(3.0 * w, 3.0 * a, 3.0 * b, w), JointIndexConfig{});
    const Point3 t(1.0, -2.0, 0.5);
    const Rotation moved = hand_pose(frame_from(w + t, a + t, b + t, w), JointIndexConfig{});
    EXPECT_LT((scaled - r).norm(), 1e-9);
    EXPECT_LT((moved - r).norm(), 1e-9);
  }
}

TEST(HandPose, CollinearFingersRejected) {
  const HandFrame f = frame_from({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 0}, 17);
  try {
    hand_pose(f, JointIndexConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateHand);
    EXPECT_EQ(e.frame_index(), 17);
  }
}

TEST(JointIndexConfig, Validates) {
  JointIndexConfig dup;
  dup.ring_tip = dup.index_tip;
  EXPECT_THROW(dup.validate(), Error);
  JointIndexConfig out_of_range;
  out_of_range.wrist = 21;
  EXPECT_THROW(out_of_range.validate(), Error);
}

TEST(ContactPoint, Midpoint) {
  HandFrame f = frame_from({0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0});
  EXPECT_EQ(contact_point(f, JointIndexConfig{}), Point3(0.5, 0.5, 0));
  for (auto& j : f.joints) j += Point3(1, 2, 3);
  EXPECT_EQ(contact_point(f, JointIndexConfig{}), Point3(1.5, 2.5, 3));
}

TEST(ProjectPoint, PrincipalPointAndOffset) {
  const CameraIntrinsics k{500, 500, 480, 270};
  EXPECT_EQ(project_point({0, 0, 1}, k), (Pixel{480, 270}));
  EXPECT_EQ(project_point({1, 0, 1}, k), (Pixel{980, 270}));
  EXPECT_THROW(project_point({0, 0, 0}, k), Error);
  EXPECT_THROW(project_point({0, 0, -1}, k), Error);
}

TEST(LiftToScene, DirectAndFallback) {
  std::vector<Point3> pts;
  for (int i = 0; i < 12; ++i) pts.emplace_back(i, 0, 1);
  std::vector<std::uint8_t> valid(12, 1);
  valid[5] = 0;  // (u=1, v=1) in a 4x3 grid
  valid[6] = 0;
  valid[1] = 0;
  valid[9] = 0;
  const PointCloud scene = PointCloud::organized(3, 4, pts, valid);
  EXPECT_EQ(lift_to_scene({0, 0}, scene), pts[0]);
  EXPECT_EQ(lift_to_scene({1, 1}, scene), pts[4]);  // only the left neighbor is valid at distance 1
  EXPECT_THROW(lift_to_scene({4, 0}, scene), Error);

  const PointCloud empty = PointCloud::organized(3, 4, pts, std::vector<std::uint8_t>(12, 0));
  try {
    lift_to_scene({0, 0}, empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoValidPoint);
  }
}

TEST(LiftToScene, CheckerboardMatchesScan) {
  const int w = 40, h = 30;
  std::vector<Point3> pts(static_cast<std::size_t>(w * h));
  std::vector<std::uint8_t> valid(pts.size());
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      pts[static_cast<std::size_t>(v * w + u)] = Point3(u, v, 1);
      valid[static_cast<std::size_t>(v * w + u)] = ((u / 3 + v / 3) % 2 == 0);
    }
  }
  const PointCloud scene = PointCloud::organized(h, w, pts, valid);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      long best = -1, best_d = 1L << 40;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (!valid[static_cast<std::size_t>(y * w + x)]) continue;
          const long d = (x - u) * (x - u) + (y - v) * (y - v);
          if (d < best_d) best_d = d, best = y * w + x;
        }
      }
      EXPECT_EQ(lift_to_scene({u, v}, scene), pts[static_cast<std::size_t>(best)]);
    }
  }
}

TEST(ProjectLift, RoundTripOnSyntheticDepth) {
  const CameraIntrinsics k{200, 200, 80, 60};
  const PointCloud scene = depth_plane(160, 120, k, 0.8);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  const double pixel = 0.8 / 200.0;
  for (int i = 0; i < 100; ++i) {
    const Point3 p(u(rng), 0.75 * u(rng), 0.8);
    const Point3 q = lift_to_scene(project_point(p, k), scene);
    EXPECT_LE((q - p).cwiseAbs().maxCoeff(), 0.5 * pixel + 1e-12);
  }
}

TEST(ExtractCoarse, ComposesAndClips) {
  const CameraIntrinsics k{200, 200, 80, 60};
  CameraModel cam{k, Eigen::Isometry3d::Identity()};
  const PointCloud scene = depth_plane(160, 120, k, 1.0);
  HandSequence seq;
  for (int t = 0; t < 10; ++t) {
    const Point3 c(-0.1 + 0.02 * t, 0.05, 0.6);
    seq.left.push_back(frame_from(c + Point3(0, 0.1, 0), c + Point3(0.01, 0, 0), c + Point3(-0.03, 0, 0.01), c - Point3(0.01, 0, 0), t, Arm::Left));
    seq.right.push_back(frame_from(c + Point3(0.15, 0.1, 0), c + Point3(0.16, 0, 0), c + Point3(0.12, 0, 0.01), c + Point3(0.14, 0, 0), t, Arm::Right));
  }
  seq.t_s = 2;
  seq.t_e = 7;
  const BimanualTrajectory traj = extract_coarse(seq, scene, cam, JointIndexConfig{});
  ASSERT_EQ(traj.size(), 6u);
  EXPECT_EQ(traj.timesteps.front(), 2);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const HandFrame& f = seq.left[i + 2];
    EXPECT_EQ(traj.left[i].position, lift_to_scene(project_point(contact_point(f, {}), k), scene));
    EXPECT_EQ(traj.left[i].orientation, hand_pose(f, {}));
    EXPECT_NEAR(traj.left[i].position.z(), 1.0, 1e-12);  // on the depth plane
    EXPECT_NEAR(traj.left[i].position.y(), traj.left[0].position.y(), 1e-12);  // collinear path
  }

  HandSequence swapped = seq;
  std::swap(swapped.left, swapped.right);
  const BimanualTrajectory sw = extract_coarse(swapped, scene, cam, JointIndexConfig{});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(sw.left[i].position, traj.right[i].position);
    EXPECT_EQ(sw.right[i].orientation, traj.left[i].orientation);
  }
}

TEST(ExtractCoarse, ExtrinsicAppliedToPositionAndRotation) {
  const CameraIntrinsics k{200, 200, 80, 60};
  const PointCloud scene = depth_plane(160, 120, k, 1.0);
  HandSequence seq;
  const Point3 c(0.0, 0.0, 0.6);
  seq.left.push_back(frame_from(c + Point3(0, 0.1, 0), c + Point3(0.01, 0, 0), c + Point3(-0.03, 0, 0.01), c - Point3(0.01, 0, 0)));
  seq.right = seq.left;
  CameraModel id{k, Eigen::Isometry3d::Identity()};
  CameraModel moved = id;
  moved.world_from_camera = Eigen::Translation3d(1, 2, 3) * Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitZ());
  const auto a = extract_coarse(seq, scene, id, {});
  const auto b = extract_coarse(seq, scene, moved, {});
  EXPECT_TRUE(b.left[0].position.isApprox(moved.world_from_camera * a.left[0].position, 1e-12));
  EXPECT_TRUE(b.left[0].orientation.isApprox(moved.world_from_camera.linear() * a.left[0].orientation, 1e-12));
}

TEST(ExtractCoarse, MissingHandReportsFrame) {
  const CameraIntrinsics k{200, 200, 80, 60};
  const PointCloud scene = depth_plane(160, 120, k, 1.0);
  HandSequence seq;
  const Point3 c(0.0, 0.0, 0.6);
  for (int t = 0; t < 5; ++t) {
    seq.left.push_back(frame_from(c + Point3(0, 0.1, 0), c + Point3(0.01, 0, 0), c + Point3(-0.03, 0, 0.01), c, t));
    if (t != 3) seq.right.push_back(frame_from(c + Point3(0, 0.1, 0), c + Point3(0.01, 0, 0), c + Point3(-0.03, 0, 0.01), c, t, Arm::Right));
  }
  seq.t_e = 4;
  try {
    extract_coarse(seq, scene, CameraModel{k, Eigen::Isometry3d::Identity()}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
    EXPECT_EQ(e.frame_index(), 3);
  }
}
