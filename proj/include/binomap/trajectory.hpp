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

#include <cstdint>
#include <string_view>
#include <vector>

#include "binomap/geometry.hpp"

namespace binomap {

enum class Arm { Left, Right };

inline Arm other(Arm arm) { return arm == Arm::Left ? Arm::Right : Arm::Left; }
std::string_view to_string(Arm arm);
/// Accepts "left"/"right" (case-insensitive). Throws InvalidConfig otherwise.
Arm parse_arm(std::string_view text);

/// End-effector position and orientation at one timestep.
struct Pose {
  Point3 position = Point3::Zero();
  Rotation orientation = Rotation::Identity();
};

/// Time-indexed left/right pose sequences of equal length.
struct BimanualTrajectory {
  std::vector<std::int64_t> timesteps;
  std::vector<Pose> left;
  std::vector<Pose> right;

  std::size_t size() const { return timesteps.size(); }
  bool empty() const { return timesteps.empty(); }

  std::vector<Pose>& arm(Arm a) { return a == Arm::Left ? left : right; }
  const std::vector<Pose>& arm(Arm a) const { return a == Arm::Left ? left : right; }

  std::vector<Point3> positions(Arm a) const;
  std::vector<Rotation> orientations(Arm a) const;

  /// Throws DegenerateInput on empty or unequal arms, InvalidRotation on a
  /// non-orthonormal orientation.
  void validate() const;
};

}  // namespace binomap
