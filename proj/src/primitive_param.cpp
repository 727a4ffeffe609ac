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

#include "binomap/primitive_param.hpp"

#include <cmath>
#include <string>

#include "binomap/error.hpp"
#include "binomap/kernels.hpp"

namespace binomap {

void SliceConfig::validate() const {
  if (!(half_thickness > 0.0)) throw Error(ErrorKind::InvalidConfig, "half_thickness must be > 0");
  if (!(direction_tolerance > 0.0 && direction_tolerance < std::numbers::pi / 2.0)) {
    throw Error(ErrorKind::InvalidConfig, "direction_tolerance must lie in (0, pi/2)");
  }
  if (max_slice_points < 2) throw Error(ErrorKind::InvalidConfig, "max_slice_points must be >= 2");
}

std::vector<Point3> horizontal_slice(const PointCloud& cloud, const SliceConfig& cfg) {
  if (!cfg.slice_height) throw Error(ErrorKind::InvalidConfig, "slice height is unset");
  const double h = *cfg.slice_height;
  std::vector<Point3> slice;
  for (const Point3& p : cloud.points()) {
    if (std::abs(p.z() - h) <= cfg.half_thickness) slice.push_back(p);
  }
  if (slice.size() <= cfg.max_slice_points) return slice;

  const std::size_t stride = (slice.size() + cfg.max_slice_points - 1) / cfg.max_slice_points;
  std::vector<Point3> thinned;
  thinned.reserve(cfg.max_slice_points);
  for (std::size_t i = 0; i < slice.size(); i += stride) thinned.push_back(slice[i]);
  return thinned;
}

namespace {

double max_extent(const PointCloud& cloud, const char* which, const Eigen::Vector3d& axis,
                  const SliceConfig& cfg) {
  const std::vector<Point3> slice = horizontal_slice(cloud, cfg);
  if (slice.empty()) {
    throw Error(ErrorKind::EmptySlice, std::string(which) + " cloud has no points within " +
                                           std::to_string(cfg.half_thickness) + " m of height " +
                                           std::to_string(*cfg.slice_height) + " m");
  }
  const auto best = kernels::max_aligned_pair(slice, axis, std::cos(cfg.direction_tolerance));
  if (!best) {
    throw Error(ErrorKind::NoAlignedPair,
                std::string(which) + " slice has no point pair parallel to the inter-arm axis");
  }
  return *best;
}

}  // namespace

double size_delta(const PointCloud& base, const PointCloud& moved, const Eigen::Vector3d& axis,
                  const SliceConfig& cfg) {
  cfg.validate();
  if (!(axis.norm() > 0.0)) throw Error(ErrorKind::DegenerateGeometry, "zero slice axis");
  const Eigen::Vector3d unit = axis.normalized();
  return max_extent(moved, "new", unit, cfg) - max_extent(base, "base", unit, cfg);
}

AdaptResult adapt_primitive(const PrimitiveRecord& rec, const PointCloud& moved,
                            const SliceConfig& cfg) {
  rec.trajectory.validate();
  if (rec.base_cloud.empty()) throw Error(ErrorKind::DegenerateInput, "record has no base cloud");
  if (moved.empty()) throw Error(ErrorKind::DegenerateInput, "new object cloud is empty");

  const SkillPattern& pattern = rec.pattern;
  const Point3 primary_start = rec.trajectory.arm(pattern.primary_arm).front().position;

  SliceConfig slice = cfg;
  if (!slice.slice_height) slice.slice_height = primary_start.z();

  AdaptResult out;
  out.delta = size_delta(rec.base_cloud, moved, rec.trajectory.left.front().position -
                                                    rec.trajectory.right.front().position,
                         slice);

  out.anchor = anchor_point(rec.trajectory, pattern, rec.base_cloud);
  const Eigen::Vector3d outward = primary_start - out.anchor;
  if (!(outward.norm() > 1e-9)) {
    throw Error(ErrorKind::DegenerateGeometry, "anchor coincides with the primary start");
  }
  if (out.delta <= -outward.norm()) {
    throw Error(ErrorKind::DegenerateGeometry, "size change collapses the primitive span");
  }
  out.new_start = primary_start + out.delta * outward.normalized();

  ScaledTrajectory scaled = scale_primary(rec.trajectory, pattern, out.anchor, out.new_start);
  out.operations.push_back("scale_primary");
  out.s = scaled.s;

  out.displacement = planar_displacement(rec.base_cloud, moved);
  out.trajectory = translate(scaled.trajectory, out.displacement);
  out.operations.push_back("relocate");
  return out;
}

}  // namespace binomap
