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

#include <gtest/gtest.h>

#include "binomap/error.hpp"
#include "binomap/primitive_param.hpp"

using namespace binomap;
using std::numbers::pi;

namespace {

// Ring of points (a circle slice) at height z, plus a cap below the slice band.
std::vector<Point3> ring(const Point3& center, double radius, int n, double z) {
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * pi * i / n;
    pts.push_back(center + Point3(radius * std::cos(t), radius * std::sin(t), z - center.z()));
  }
  return pts;
}

PointCloud scaled(const std::vector<Point3>& pts, const Point3& about, double c) {
  std::vector<Point3> out;
  for (const Point3& p : pts) out.push_back(about + c * (p - about));
  return PointCloud(out);
}

BimanualTrajectory pivot_record_traj(double span) {
  BimanualTrajectory t;
  for (int i = 0; i < 5; ++i) {
    t.timesteps.push_back(i);
    const double th = 0.25 * pi * i / 4.0;
    t.left.push_back({Point3(-span / 2, 0, 0.05), Rotation::Identity()});
    t.right.push_back({Point3(-span / 2 + span * std::cos(th), 0, 0.05 + span * std::sin(th)), Rotation::Identity()});
  }
  return t;
}

}  // namespace

TEST(SliceConfig, Validates) {
  SliceConfig c;
  c.half_thickness = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = SliceConfig{};
  c.direction_tolerance = -0.1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(HorizontalSlice, BandAndStride) {
  std::vector<Point3> pts;
  for (int i = 0; i < 100; ++i) pts.emplace_back(i, 0, 0.001 * i);
  SliceConfig cfg;
  cfg.slice_height = 0.05;
  cfg.half_thickness = 0.0105;
  const auto s = horizontal_slice(PointCloud(pts), cfg);
  EXPECT_EQ(s.size(), 21u);
  cfg.max_slice_points = 7;
  EXPECT_LE(horizontal_slice(PointCloud(pts), cfg).size(), 7u);
}

TEST(SizeDelta, ScaledCircle) {
  const auto base = ring(Point3::Zero(), 0.5, 360, 0.0);
  SliceConfig cfg;
  cfg.slice_height = 0.0;
  const Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  EXPECT_EQ(size_delta(PointCloud(base), PointCloud(base), axis, cfg), 0.0);
  const double d = size_delta(PointCloud(base), scaled(base, Point3::Zero(), 1.2), axis, cfg);
  EXPECT_NEAR(d, 0.2 * 1.0, 1e-9);
  EXPECT_EQ(size_delta(scaled(base, Point3::Zero(), 1.2), PointCloud(base), axis, cfg), -d);
}

TEST(SizeDelta, Errors) {
  SliceConfig cfg;
  cfg.slice_height = 0.0;
  const PointCloud pair({{0, 0, 0}, {0, 1, 0}});
  try {
    size_delta(pair, pair, Eigen::Vector3d::UnitX(), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoAlignedPair);
  }
  const PointCloud high({{0, 0, 1}, {1, 0, 1}});
  try {
    size_delta(high, PointCloud({{0, 0, 0}, {1, 0, 0}}), Eigen::Vector3d::UnitX(), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySlice);
    EXPECT_NE(std::string(e.what()).find("base"), std::string::npos);
  }
}

TEST(AdaptPrimitive, NoOpForSameObject) {
  const auto obj = ring(Point3(0, 0, 0.05), 0.08, 200, 0.05);
  PrimitiveRecord rec;
  rec.trajectory = pivot_record_traj(0.2);
  rec.base_cloud = PointCloud(obj);
  rec.pattern = {SkillKind::Pivoting, Arm::Right};
  const AdaptResult r = adapt_primitive(rec, PointCloud(obj), SliceConfig{});
  EXPECT_EQ(r.delta, 0.0);
  EXPECT_EQ(r.operations, (std::vector<std::string>{"scale_primary", "relocate"}));
  for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
    EXPECT_LT((r.trajectory.right[i].position - rec.trajectory.right[i].position).norm(), 1e-9);
    EXPECT_LT((r.trajectory.left[i].position - rec.trajectory.left[i].position).norm(), 1e-9);
  }
}

TEST(AdaptPrimitive, PivotSpanGrowsByDelta) {
  // Base slice diameter 0.10 m, new 0.12 m, so delta = 0.02 and the 0.20 m
  // span becomes 0.22 m (s = 1.1).
  const Point3 c(0, 0, 0.05);
  const auto base = ring(c, 0.05, 720, 0.05);
  PrimitiveRecord rec;
  rec.trajectory = pivot_record_traj(0.2);
  rec.base_cloud = PointCloud(base);
  rec.pattern = {SkillKind::Pivoting, Arm::Right};
  const AdaptResult r = adapt_primitive(rec, scaled(base, c, 1.2), SliceConfig{});
  EXPECT_NEAR(r.delta, 0.02, 1e-9);
  EXPECT_NEAR(r.s, 1.1, 1e-9);
  const auto& a = rec.trajectory.right;
  const auto& b = r.trajectory.right;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      EXPECT_NEAR((b[i].position - b[j].position).norm(), 1.1 * (a[i].position - a[j].position).norm(), 1e-9);
    }
  }
  EXPECT_NEAR((b[0].position - r.trajectory.left[0].position).norm(), 0.22, 1e-9);
}

TEST(AdaptPrimitive, WrappingKeepsConstantSpan) {
  const Point3 c(0, 0, 0.05);
  const auto base = ring(c, 0.05, 720, 0.05);
  BimanualTrajectory t;
  for (int i = 0; i < 6; ++i) {
    t.timesteps.push_back(i);
    const Point3 lift(0.01 * i, 0.0, 0.004 * i * i);
    t.left.push_back({Point3(-0.055, 0, 0.05) + lift, Rotation::Identity()});
    t.right.push_back({Point3(0.055, 0, 0.05) + lift, Rotation::Identity()});
  }
  PrimitiveRecord rec{t, PointCloud(base), "", {SkillKind::Wrapping, Arm::Right}, 0.005, 1.0, "wrapping"};
  const AdaptResult r = adapt_primitive(rec, scaled(base, c, 0.8), SliceConfig{});
  EXPECT_NEAR(r.delta, -0.02, 1e-9);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR((r.trajectory.right[i].position - r.trajectory.left[i].position).norm(), 0.11 - 0.02, 1e-9);
  }
}

TEST(AdaptPrimitive, Idempotent) {
  const Point3 c(0, 0, 0.05);
  const auto base = ring(c, 0.05, 720, 0.05);
  const PointCloud moved = scaled(base, c, 1.3);
  PrimitiveRecord rec;
  rec.trajectory = pivot_record_traj(0.2);
  rec.base_cloud = PointCloud(base);
  rec.pattern = {SkillKind::Pivoting, Arm::Right};
  const AdaptResult once = adapt_primitive(rec, moved, SliceConfig{});
  PrimitiveRecord again = rec;
  again.trajectory = once.trajectory;
  again.base_cloud = moved;
  const AdaptResult twice = adapt_primitive(again, moved, SliceConfig{});
  EXPECT_EQ(twice.delta, 0.0);
  for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
    EXPECT_LT((twice.trajectory.right[i].position - once.trajectory.right[i].position).norm(), 1e-12);
  }
}
