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

#include "binomap/sim_oracle.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "binomap/error.hpp"

namespace binomap {

namespace {

std::string format_mm(double meters) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f mm", meters * 1e3);
  return buf;
}

}  // namespace

VerifierResult verify_window(const BimanualTrajectory& traj, const PointCloud& object,
                             Arm primary, const WindowOracle& window) {
  if (traj.empty()) throw Error(ErrorKind::DegenerateInput, "trajectory is empty");
  const double d0 = min_distance(traj.arm(primary).front().position, object).distance;
  const std::string where = "initial contact distance " + format_mm(d0);
  if (d0 > window.hi) return {Outcome::ContactLoss, where + " above window"};
  if (d0 < window.lo) return {Outcome::OverCompression, where + " below window"};
  return {Outcome::Success, where + " inside window"};
}

void OracleConfig::validate() const {
  if (!(loss_threshold > 0.0)) throw Error(ErrorKind::InvalidConfig, "loss_threshold must be > 0");
  if (!(compress_threshold >= 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "compress_threshold must be >= 0");
  }
  if (last_contact_frame && *last_contact_frame < first_contact_frame) {
    throw Error(ErrorKind::InvalidConfig, "contact frame range is empty");
  }
}

VerifierResult verify_geometric(const BimanualTrajectory& traj, const PointCloud& object,
                                Arm primary, const OracleConfig& cfg) {
  cfg.validate();
  if (traj.empty() || object.empty()) {
    throw Error(ErrorKind::DegenerateInput, "verification needs a trajectory and an object");
  }
  const std::size_t last = cfg.last_contact_frame.value_or(traj.size() - 1);
  if (last >= traj.size()) {
    throw Error(ErrorKind::PreconditionViolation, "contact frames exceed the trajectory length");
  }

  std::optional<ConvexHull> hull;
  std::string hull_note;
  try {
    hull.emplace(object.points());
  } catch (const Error& e) {
    hull_note = std::string("; hull unavailable (") + e.what() + "), over-compression check disabled";
  }

  const std::vector<Pose>& poses = traj.arm(primary);
  const auto first = static_cast<std::ptrdiff_t>(cfg.first_contact_frame);
  const auto count = static_cast<std::ptrdiff_t>(last) - first + 1;
  std::vector<double> depth(static_cast<std::size_t>(count), 0.0);
  std::vector<double> distance(static_cast<std::size_t>(count), 0.0);

  // Frames are independent; the verdict is taken in frame order afterwards.
#pragma omp parallel for schedule(static) if (count * static_cast<std::ptrdiff_t>(object.size()) > 1 << 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Point3& p = poses[static_cast<std::size_t>(first + i)].position;
    const auto slot = static_cast<std::size_t>(i);
    depth[slot] = hull ? hull->depth(p) : 0.0;
    distance[slot] = min_distance(p, object).distance;
  }

  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto slot = static_cast<std::size_t>(i);
    const std::string frame = "frame " + std::to_string(first + i);
    if (depth[slot] > cfg.compress_threshold) {
      return {Outcome::OverCompression,
              frame + ": penetration depth " + format_mm(depth[slot]) + hull_note};
    }
    if (distance[slot] > cfg.loss_threshold) {
      return {Outcome::ContactLoss, frame + ": distance " + format_mm(distance[slot]) + hull_note};
    }
  }
  return {Outcome::Success, "contact held over " + std::to_string(count) + " frames" + hull_note};
}

}  // namespace binomap
