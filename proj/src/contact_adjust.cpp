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

#include "binomap/contact_adjust.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "binomap/error.hpp"
#include "binomap/kernels.hpp"

namespace binomap {

namespace {

std::string lowercase(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string_view to_string(SkillKind kind) {
  switch (kind) {
    case SkillKind::Poking: return "poking";
    case SkillKind::Pivoting: return "pivoting";
    case SkillKind::Pushing: return "pushing";
    case SkillKind::Wrapping: return "wrapping";
  }
  return "unknown";
}

SkillKind parse_skill(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "poking") return SkillKind::Poking;
  if (s == "pivoting") return SkillKind::Pivoting;
  if (s == "pushing") return SkillKind::Pushing;
  if (s == "wrapping") return SkillKind::Wrapping;
  throw Error(ErrorKind::InvalidConfig, "unknown skill '" + std::string(text) + "'");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Success: return "Success";
    case Outcome::ContactLoss: return "ContactLoss";
    case Outcome::OverCompression: return "OverCompression";
    case Outcome::OtherFailure: return "OtherFailure";
  }
  return "OtherFailure";
}

Outcome parse_outcome(std::string_view text) {
  for (Outcome o : {Outcome::Success, Outcome::ContactLoss, Outcome::OverCompression,
                    Outcome::OtherFailure}) {
    if (to_string(o) == text) return o;
  }
  throw Error(ErrorKind::FormatError, "unknown outcome '" + std::string(text) + "'");
}

double AdjustConfig::target_distance(int k) const {
  return d1 * std::pow(gamma, static_cast<double>(k - 1));
}

void AdjustConfig::validate() const {
  if (!(d1 > 0.0) || !std::isfinite(d1)) throw Error(ErrorKind::InvalidConfig, "d1 must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorKind::InvalidConfig, "gamma must lie in (0, 1)");
  if (k_max < 1) throw Error(ErrorKind::InvalidConfig, "k_max must be >= 1");
}

Point3 anchor_point(const BimanualTrajectory& traj, const SkillPattern& pattern,
                    const PointCloud& object) {
  if (object.empty()) throw Error(ErrorKind::DegenerateInput, "object cloud is empty");
  if (traj.empty()) throw Error(ErrorKind::DegenerateInput, "trajectory is empty");
  if (pattern.reference() == AnchorReference::ObjectFarthestPoint) {
    const Point3& start = traj.arm(pattern.primary_arm).front().position;
    return object[kernels::farthest(object.points(), start).index];
  }
  return traj.arm(pattern.support_arm()).front().position;
}

Point3 retarget_contact(const Point3& p_start, const PointCloud& object, double d_target) {
  if (object.empty()) throw Error(ErrorKind::DegenerateInput, "object cloud is empty");
  if (!(d_target >= 0.0)) {
    throw Error(ErrorKind::PreconditionViolation, "target distance must be >= 0");
  }

  const NearestPoint nearest = min_distance(p_start, object);
  const double d0 = nearest.distance;
  if (std::abs(d0 - d_target) <= 1e-12) return p_start;

  Eigen::Vector3d dir;
  if (d0 > 1e-12) {
    dir = (nearest.point - p_start) / d0;
  } else {
    // Start lies on the cloud: head for the interior.
    dir = object.centroid() - p_start;
    if (!(dir.norm() > 1e-12)) {
      throw Error(ErrorKind::Unreachable, "no direction towards the object from its centroid");
    }
    dir.normalize();
  }

  // Distance to the cloud is 1-Lipschitz along the ray, so stepping by the
  // remaining error never jumps past the first crossing.
  auto error_at = [&](double t) {
    return min_distance(Point3(p_start + t * dir), object).distance - d_target;
  };
  const double sign = d0 > d_target ? 1.0 : -1.0;
  double t = 0.0;
  double err = d0 - d_target;
  for (int it = 0; it < 2000 && std::abs(err) > 1e-12; ++it) {
    const double next_t = t + sign * std::abs(err);
    const double next_err = error_at(next_t);
    if ((next_err > 0.0) != (err > 0.0) && next_err != 0.0) {
      // Rounding overshoot; bisect the bracket.
      double lo = t, hi = next_t;
      for (int b = 0; b < 200 && std::abs(hi - lo) > 0.0; ++b) {
        const double mid = 0.5 * (lo + hi);
        const double e = error_at(mid);
        if ((e > 0.0) == (err > 0.0)) lo = mid; else hi = mid;
      }
      t = 0.5 * (lo + hi);
      err = error_at(t);
      break;
    }
    if (std::abs(next_err) >= std::abs(err) && sign < 0.0) {
      // Moving away no longer increases the distance.
      t = next_t;
      err = next_err;
      break;
    }
    t = next_t;
    err = next_err;
  }

  if (std::abs(err) > 1e-6) {
    throw Error(ErrorKind::Unreachable,
                "cannot reach distance " + std::to_string(d_target) + " m along the contact ray");
  }
  return p_start + t * dir;
}

ScaledTrajectory scale_primary(const BimanualTrajectory& traj, const SkillPattern& pattern,
                               const Point3& anchor, const Point3& new_start) {
  if (traj.empty()) throw Error(ErrorKind::DegenerateInput, "trajectory is empty");
  const Arm primary = pattern.primary_arm;
  const Point3& old_start = traj.arm(primary).front().position;
  const double denom = (old_start - anchor).norm();
  if (!(denom > 1e-9)) {
    throw Error(ErrorKind::DegenerateGeometry, "anchor coincides with the primary start");
  }
  const double s = (new_start - anchor).norm() / denom;

  ScaledTrajectory out{traj, s};
  std::vector<Pose>& poses = out.trajectory.arm(primary);
  const std::vector<Pose>& support = traj.arm(pattern.support_arm());
  for (std::size_t t = 0; t < poses.size(); ++t) {
    const Point3 center = pattern.synchronized() ? support[t].position : anchor;
    poses[t].position = center + s * (poses[t].position - center);
  }
  return out;
}

double inter_arm_distance_variation(const BimanualTrajectory& traj) {
  if (traj.empty()) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const double d = (traj.left[t].position - traj.right[t].position).norm();
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

BimanualTrajectory synchronize_arms(const BimanualTrajectory& traj, const SkillPattern& pattern) {
  traj.validate();
  const std::vector<Pose>& support = traj.arm(pattern.support_arm());
  BimanualTrajectory out = traj;
  std::vector<Pose>& primary = out.arm(pattern.primary_arm);

  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  for (std::size_t t = 0; t < traj.size(); ++t) offset += primary[t].position - support[t].position;
  offset /= static_cast<double>(traj.size());

  const Rotation relative = support.front().orientation.transpose() * primary.front().orientation;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    primary[t].position = support[t].position + offset;
    primary[t].orientation = quat_to_rotation(rotation_to_quat(support[t].orientation * relative));
  }
  return out;
}

AdjustResult iterate_adjust(const BimanualTrajectory& traj, const SkillPattern& pattern,
                            const PointCloud& object, const AdjustConfig& cfg,
                            const Verifier& verifier) {
  cfg.validate();
  traj.validate();
  if (pattern.synchronized()) {
    const double variation = inter_arm_distance_variation(traj);
    if (variation > kSyncTolerance) {
      throw Error(ErrorKind::PreconditionViolation,
                  std::string(to_string(pattern.kind)) +
                      " needs a constant inter-arm distance; variation is " +
                      std::to_string(variation) + " m");
    }
  }

  AdjustResult result;
  result.anchor = anchor_point(traj, pattern, object);
  const Point3 start = traj.arm(pattern.primary_arm).front().position;

  for (int k = 1; k <= cfg.k_max; ++k) {
    const double d = cfg.target_distance(k);
    const Point3 new_start = retarget_contact(start, object, d);
    ScaledTrajectory scaled = scale_primary(traj, pattern, result.anchor, new_start);
    VerifierResult verdict = verifier.verify(scaled.trajectory, object, pattern.primary_arm);
    const bool ok = verdict.success();
    result.log.push_back(AdjustAttempt{k, d, scaled.s, std::move(verdict)});
    result.trajectory = std::move(scaled.trajectory);
    result.k_used = k;
    if (ok) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Eigen::Vector3d planar_displacement(const PointCloud& base, const PointCloud& moved) {
  if (base.empty() || moved.empty()) {
    throw Error(ErrorKind::DegenerateInput, "relocation needs two non-empty clouds");
  }
  Eigen::Vector3d delta = moved.centroid() - base.centroid();
  delta.z() = 0.0;
  return delta;
}

BimanualTrajectory translate(const BimanualTrajectory& traj, const Eigen::Vector3d& shift) {
  BimanualTrajectory out = traj;
  for (Pose& p : out.left) p.position += shift;
  for (Pose& p : out.right) p.position += shift;
  return out;
}

BimanualTrajectory relocate(const BimanualTrajectory& traj, const PointCloud& base,
                            const PointCloud& moved) {
  return translate(traj, planar_displacement(base, moved));
}

}  // namespace binomap
