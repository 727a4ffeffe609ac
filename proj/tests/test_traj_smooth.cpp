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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "binomap/bspline.hpp"
#include "binomap/error.hpp"
#include "binomap/traj_smooth.hpp"
#include "oracles.hpp"

using namespace binomap;
using std::numbers::pi;

namespace {

Rotation about(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

BimanualTrajectory make_traj(const std::vector<Point3>& left, const std::vector<Point3>& right) {
  BimanualTrajectory t;
  for (std::size_t i = 0; i < left.size(); ++i) {
    t.timesteps.push_back(static_cast<std::int64_t>(i));
    t.left.push_back({left[i], about(Eigen::Vector3d::UnitZ(), 0.01 * i)});
    t.right.push_back({right[i], about(Eigen::Vector3d::UnitX(), 0.02 * i)});
  }
  return t;
}

}  // namespace

TEST(BSpline, BasisIsPartitionOfUnity) {
  for (int n : {4, 5, 9}) {
    const auto knots = CubicBSpline::clamped_uniform_knots(n);
    EXPECT_EQ(knots.size(), static_cast<std::size_t>(n + 4));
    for (double u = 0.0; u <= 1.0; u += 0.01) {
      const Eigen::RowVectorXd b = CubicBSpline::basis(knots, n, u);
      EXPECT_NEAR(b.sum(), 1.0, 1e-12);
      EXPECT_GE(b.minCoeff(), -1e-15);
    }
    EXPECT_NEAR(CubicBSpline::basis(knots, n, 1.0)(n - 1), 1.0, 1e-15);
  }
}

TEST(BSpline, ReproducesCubicPolynomialExactly) {
  Eigen::MatrixXd data(30, 2);
  std::vector<double> u(30);
  for (int i = 0; i < 30; ++i) {
    u[static_cast<std::size_t>(i)] = i / 29.0;
    const double t = u[static_cast<std::size_t>(i)];
    data(i, 0) = 1.0 + 2.0 * t - 3.0 * t * t + t * t * t;
    data(i, 1) = -t * t;
  }
  const CubicBSpline s = CubicBSpline::fit(data, u, 7, 0.0);
  for (int i = 0; i < 30; ++i) {
    EXPECT_LT((s.evaluate(u[static_cast<std::size_t>(i)]).transpose() - data.row(i)).norm(), 1e-10);
  }
}

TEST(BSpline, FitRejectsBadControlCount) {
  Eigen::MatrixXd data = Eigen::MatrixXd::Random(5, 2);
  const std::vector<double> u = {0, 0.25, 0.5, 0.75, 1};
  EXPECT_THROW(CubicBSpline::fit(data, u, 3, 0.0), Error);
  EXPECT_THROW(CubicBSpline::fit(data, u, 6, 0.0), Error);
}

TEST(ChordLength, NormalizedAndMonotone) {
  Eigen::MatrixXd data(4, 2);
  data << 0, 0, 1, 0, 1, 2, 1, 3;
  const auto u = chord_length_parameters(data);
  EXPECT_EQ(u.front(), 0.0);
  EXPECT_EQ(u.back(), 1.0);
  EXPECT_NEAR(u[1], 0.25, 1e-15);
  EXPECT_NEAR(u[2], 0.75, 1e-15);
  EXPECT_THROW(chord_length_parameters(Eigen::MatrixXd::Zero(3, 2)), Error);
}

TEST(SmoothPositions, StraightLineUnchanged) {
  std::vector<Point3> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(Point3(0.1, 0.2, 0.3) + i * Point3(0.01, -0.02, 0.005));
  const auto out = smooth_positions(pts, SmoothConfig{});
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT((out.smoothed[i] - pts[i]).norm(), 1e-9);
}

TEST(SmoothPositions, QuarterCircleBeatsPolyline) {
  std::vector<Point3> pts;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.5 * pi * i / 19.0;
    pts.emplace_back(std::cos(t), std::sin(t), 0.0);
  }
  SmoothConfig cfg;
  cfg.spline_control_points = 10;
  const auto out = smooth_positions(pts, cfg);
  EXPECT_LT((out.smoothed.front() - pts.front()).norm(), 1e-12);
  EXPECT_LT((out.smoothed.back() - pts.back()).norm(), 1e-12);
  double spline_dev = 0.0;
  for (const Point3& p : out.smoothed) spline_dev = std::max(spline_dev, std::abs(p.norm() - 1.0));
  const double chord_sagitta = 1.0 - std::cos(0.5 * (0.5 * pi / 19.0));
  EXPECT_LT(spline_dev, chord_sagitta);
}

TEST(SmoothPositions, CoplanarEndpointsAndMonotone) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 0.002);
  std::vector<Point3> pts;
  for (int i = 0; i < 40; ++i) {
    const double t = 0.5 * pi * i / 39.0;
    pts.push_back(Point3(0.2 * std::cos(t), 0.1, 0.2 * std::sin(t)) + Point3(noise(rng), noise(rng), noise(rng)));
  }
  const auto out = smooth_positions(pts, SmoothConfig{});
  for (const Point3& p : out.smoothed) EXPECT_LT(std::abs(out.plane.signed_distance(p)), 1e-9);
  EXPECT_LT((out.smoothed.front() - project_to_plane(pts.front(), out.plane)).norm(), 1e-12);
  EXPECT_LT((out.smoothed.back() - project_to_plane(pts.back(), out.plane)).norm(), 1e-12);
  ASSERT_EQ(out.deviations.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(out.deviations[i], (out.smoothed[i] - pts[i]).norm(), 1e-15);
  }
  // Ordering along the arc is preserved.
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_GT(std::atan2(out.smoothed[i].z() - 0.0, out.smoothed[i].x()),
              std::atan2(out.smoothed[i - 1].z(), out.smoothed[i - 1].x()) - 1e-12);
  }
}

TEST(SmoothPositions, TooFewPointsRejected) {
  const std::vector<Point3> three = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  try {
    smooth_positions(three, SmoothConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
  }
}

TEST(SelectAnchors, Examples) {
  SmoothConfig cfg;
  cfg.top_n = 2;
  const std::vector<double> dev = {5, 1, 3, 2, 9};
  EXPECT_EQ(select_anchors(dev, cfg).indices, (std::vector<std::size_t>{0, 1, 3, 4}));
  cfg.top_n = 0;
  EXPECT_EQ(select_anchors(dev, cfg).indices, (std::vector<std::size_t>{0, 4}));
  cfg.top_n = 5;
  EXPECT_EQ(select_anchors(dev, cfg).indices, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  cfg.top_n = 1;
  const std::vector<double> ties = {0, 2, 2, 2, 0};
  EXPECT_EQ(select_anchors(ties, cfg).indices, (std::vector<std::size_t>{0, 1, 4}));
}

TEST(SmoothRotations, Examples) {
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  std::vector<Rotation> r = {Rotation::Identity(), about(z, 2.0), about(z, 0.5 * pi)};
  const auto out = smooth_rotations(r, AnchorSet{{0, 2}});
  EXPECT_LT((out[1] - about(z, 0.25 * pi)).norm(), 1e-12);
  EXPECT_EQ(out[0], r[0]);
  EXPECT_EQ(out[2], r[2]);

  const Eigen::Vector3d axis = Eigen::Vector3d(1, -2, 0.5).normalized();
  std::vector<Rotation> s(5, Rotation::Identity());
  s[4] = about(axis, 2.0 * pi / 3.0);
  s[2] = about(Eigen::Vector3d::UnitY(), 1.0);  // overwritten by interpolation
  const auto out2 = smooth_rotations(s, AnchorSet{{0, 4}});
  for (int i = 1; i <= 3; ++i) {
    EXPECT_LT((out2[static_cast<std::size_t>(i)] - about(axis, i * pi / 6.0)).norm(), 1e-12);
  }

  std::mt19937_64 rng(4);
  std::vector<Rotation> random;
  for (int i = 0; i < 6; ++i) random.push_back(oracle::random_rotation(rng));
  const auto same = smooth_rotations(random, AnchorSet{{0, 1, 2, 3, 4, 5}});
  for (int i = 0; i < 6; ++i) EXPECT_EQ(same[static_cast<std::size_t>(i)], random[static_cast<std::size_t>(i)]);
}

TEST(SmoothTrajectory, PerArmPlanesAndRotationValidity) {
  std::vector<Point3> left, right;
  for (int i = 0; i < 30; ++i) {
    const double t = i / 29.0;
    left.emplace_back(t, 0.1 * t * t, 0.0);                  // plane z = 0
    right.emplace_back(0.5, 0.3 * t, 0.2 * std::sin(2 * t));  // plane x = 0.5
  }
  const SmoothResult res = smooth_trajectory(make_traj(left, right), SmoothConfig{}, SmoothConfig{});
  EXPECT_NEAR(std::abs(res.left.plane.normal.z()), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(res.right.plane.normal.x()), 1.0, 1e-9);
  for (Arm a : {Arm::Left, Arm::Right}) {
    for (const Pose& p : res.trajectory.arm(a)) {
      EXPECT_LT(std::abs(res.arm(a).plane.signed_distance(p.position)), 1e-9);
      EXPECT_TRUE(is_rotation(p.orientation, 1e-9));
    }
  }
  EXPECT_EQ(res.trajectory.timesteps, make_traj(left, right).timesteps);
}

TEST(SmoothTrajectory, AnchorsAllIsIdentityOnSmoothInput) {
  std::vector<Point3> left, right;
  for (int i = 0; i < 10; ++i) {
    left.emplace_back(0.01 * i, 0.0, 0.0);
    right.emplace_back(0.0, 0.02 * i, 0.1);
  }
  SmoothConfig cfg;
  cfg.top_n = 100;
  const auto traj = make_traj(left, right);
  const SmoothResult res = smooth_trajectory(traj, cfg, cfg);
  for (Arm a : {Arm::Left, Arm::Right}) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
      EXPECT_LT((res.trajectory.arm(a)[i].position - traj.arm(a)[i].position).norm(), 1e-9);
      EXPECT_EQ(res.trajectory.arm(a)[i].orientation, traj.arm(a)[i].orientation);
    }
  }
}

TEST(SmoothTrajectory, ErrorNamesArm) {
  std::vector<Point3> ok, bad;
  for (int i = 0; i < 6; ++i) ok.emplace_back(0.01 * i, 0.001 * i * i, 0.0);
  bad.assign(6, Point3(0.2, 0.2, 0.2));
  try {
    smooth_trajectory(make_traj(ok, bad), SmoothConfig{}, SmoothConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateInput);
    EXPECT_NE(std::string(e.what()).find("right"), std::string::npos);
  }
}
