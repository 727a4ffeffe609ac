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

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "binomap/contact_adjust.hpp"
#include "binomap/geometry.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

struct SliceConfig {
  /// Height of the horizontal slice; adapt_primitive fills it from the
  /// primary arm's initial contact when unset.
  std::optional<double> slice_height;
  double half_thickness = 0.005;
  double direction_tolerance = 5.0 * std::numbers::pi / 180.0;
  /// Slices above this size are thinned by a uniform stride.
  std::size_t max_slice_points = 2000;

  void validate() const;
};

/// A verified primitive: refined trajectory, the base object it was tuned
/// on and the accepted contact distance d and scale s.
struct PrimitiveRecord {
  BimanualTrajectory trajectory;
  PointCloud base_cloud;
  std::string base_cloud_path;
  SkillPattern pattern;
  double d = 0.0;
  double s = 1.0;
  std::string skill;
};

/// Points with |z - height| <= half_thickness, thinned to max_slice_points.
std::vector<Point3> horizontal_slice(const PointCloud& cloud, const SliceConfig& cfg);

/// Characteristic size change along `axis`: the longest slice pair aligned
/// (within direction_tolerance) with +-axis on `moved` minus the same on `base`.
/// Throws EmptySlice or NoAlignedPair.
double size_delta(const PointCloud& base, const PointCloud& moved, const Eigen::Vector3d& axis,
                  const SliceConfig& cfg);

struct AdaptResult {
  BimanualTrajectory trajectory;
  double delta = 0.0;
  double s = 1.0;
  Point3 anchor = Point3::Zero();
  Point3 new_start = Point3::Zero();
  Eigen::Vector3d displacement = Eigen::Vector3d::Zero();
  /// Names of the trajectory transforms applied, in order.
  std::vector<std::string> operations;
};

/// One-shot adaptation to a new instance: the verified primary start moves
/// outward along anchor->start by delta, the primary arm is rescaled once,
/// then the result is relocated onto the new cloud.
AdaptResult adapt_primitive(const PrimitiveRecord& rec, const PointCloud& moved,
                            const SliceConfig& cfg);

}  // namespace binomap
