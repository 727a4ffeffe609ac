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

#include <string>
#include <string_view>
#include <vector>

#include "binomap/geometry.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

enum class SkillKind { Poking, Pivoting, Pushing, Wrapping };
enum class AnchorReference { FixedArm, ObjectFarthestPoint };

std::string_view to_string(SkillKind kind);
/// "poking", "pivoting", "pushing", "wrapping". Throws InvalidConfig otherwise.
SkillKind parse_skill(std::string_view text);

/// Per-skill motion pattern: which arm moves and what it is scaled about.
struct SkillPattern {
  SkillKind kind = SkillKind::Pivoting;
  Arm primary_arm = Arm::Right;

  Arm support_arm() const { return other(primary_arm); }
  /// Poking scales about the farthest object point; every other skill about the support arm.
  AnchorReference reference() const {
    return kind == SkillKind::Poking ? AnchorReference::ObjectFarthestPoint
                                     : AnchorReference::FixedArm;
  }
  /// Pushing and wrapping move both arms with a constant inter-arm offset.
  bool synchronized() const { return kind == SkillKind::Pushing || kind == SkillKind::Wrapping; }
};

struct AdjustConfig {
  double d1 = 0.005;
  double gamma = 0.85;
  int k_max = 10;

  /// d_k = d1 * gamma^(k-1), k >= 1.
  double target_distance(int k) const;
  void validate() const;
};

enum class Outcome { Success, ContactLoss, OverCompression, OtherFailure };
std::string_view to_string(Outcome outcome);
Outcome parse_outcome(std::string_view text);

struct VerifierResult {
  Outcome outcome = Outcome::OtherFailure;
  std::string detail;

  bool success() const { return outcome == Outcome::Success; }
};

/// Judges one candidate trajectory against the object. Implementations must be
/// deterministic for identical inputs.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual VerifierResult verify(const BimanualTrajectory& traj, const PointCloud& object,
                                Arm primary) const = 0;
};

/// Poking: the object point farthest from the primary arm's first position
/// (lowest index on ties). Otherwise: the support arm's first position.
Point3 anchor_point(const BimanualTrajectory& traj, const SkillPattern& pattern,
                    const PointCloud& object);

/// Moves p_start along the ray towards its nearest object point until its
/// distance to the cloud equals d_target (within 1e-6). Throws Unreachable
/// if the ray cannot realize the target.
Point3 retarget_contact(const Point3& p_start, const PointCloud& object, double d_target);

struct ScaledTrajectory {
  BimanualTrajectory trajectory;
  double s = 1.0;
};

/// s = |new_start - anchor| / |old_start - anchor|, then on the primary arm
/// p'_t = anchor + s (p_t - anchor). Synchronized skills scale about the
/// support arm frame by frame: p'_t = support_t + s (p_t - support_t).
/// Orientations and the support arm are untouched. Throws DegenerateGeometry
/// when |old_start - anchor| <= 1e-9.
ScaledTrajectory scale_primary(const BimanualTrajectory& traj, const SkillPattern& pattern,
                               const Point3& anchor, const Point3& new_start);

struct AdjustAttempt {
  int k = 0;
  double d = 0.0;
  double s = 1.0;
  VerifierResult result;
};

struct AdjustResult {
  BimanualTrajectory trajectory;  // successful attempt, or the last one
  int k_used = 0;
  bool converged = false;  // false marks AllAttemptsFailed
  Point3 anchor = Point3::Zero();
  std::vector<AdjustAttempt> log;

  const AdjustAttempt& final_attempt() const { return log.back(); }
};

/// For k = 1..k_max: d_k, retarget the primary start, scale, verify; stop at
/// the first success. Every attempt starts from the input trajectory.
AdjustResult iterate_adjust(const BimanualTrajectory& traj, const SkillPattern& pattern,
                            const PointCloud& object, const AdjustConfig& cfg,
                            const Verifier& verifier);

/// Planar centroid shift (z zeroed) applied to both arms.
Eigen::Vector3d planar_displacement(const PointCloud& base, const PointCloud& moved);
BimanualTrajectory relocate(const BimanualTrajectory& traj, const PointCloud& base,
                            const PointCloud& moved);
BimanualTrajectory translate(const BimanualTrajectory& traj, const Eigen::Vector3d& shift);

/// max - min of the per-frame inter-arm distance.
double inter_arm_distance_variation(const BimanualTrajectory& traj);

/// Rebuilds the primary arm as support_t + mean offset, with orientation
/// support_t * (frame-0 relative rotation), so the arms move rigidly together.
BimanualTrajectory synchronize_arms(const BimanualTrajectory& traj, const SkillPattern& pattern);

inline constexpr double kSyncTolerance = 1e-6;

}  // namespace binomap
