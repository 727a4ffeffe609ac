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

#include "binomap/trajectory.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "binomap/error.hpp"

namespace binomap {

std::string_view to_string(Arm arm) { return arm == Arm::Left ? "left" : "right"; }

Arm parse_arm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "left") return Arm::Left;
  if (lower == "right") return Arm::Right;
  throw Error(ErrorKind::InvalidConfig, "unknown arm '" + std::string(text) + "'");
}

std::vector<Point3> BimanualTrajectory::positions(Arm a) const {
  std::vector<Point3> out;
  out.reserve(size());
  for (const Pose& p : arm(a)) out.push_back(p.position);
  return out;
}

std::vector<Rotation> BimanualTrajectory::orientations(Arm a) const {
  std::vector<Rotation> out;
  out.reserve(size());
  for (const Pose& p : arm(a)) out.push_back(p.orientation);
  return out;
}

void BimanualTrajectory::validate() const {
  if (timesteps.empty()) throw Error(ErrorKind::DegenerateInput, "trajectory is empty");
  if (left.size() != timesteps.size() || right.size() != timesteps.size()) {
    throw Error(ErrorKind::DegenerateInput, "left/right/timestep lengths differ");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (const Pose* p : {&left[i], &right[i]}) {
      if (!p->position.allFinite()) {
        throw Error(ErrorKind::DegenerateInput, "non-finite position", timesteps[i]);
      }
      if (!is_rotation(p->orientation, 1e-6)) {
        throw Error(ErrorKind::InvalidRotation, "orientation is not a rotation", timesteps[i]);
      }
    }
  }
}

}  // namespace binomap
