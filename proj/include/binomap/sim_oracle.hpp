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
#include <limits>
#include <memory>
#include <optional>

#include "binomap/contact_adjust.hpp"
#include "binomap/convex_hull.hpp"

namespace binomap {

/// Hidden success window on the primary arm's initial contact distance.
struct WindowOracle {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Success iff lo <= d0 <= hi, where d0 is the primary start's distance to
/// the object; ContactLoss above, OverCompression below.
VerifierResult verify_window(const BimanualTrajectory& traj, const PointCloud& object,
                             Arm primary, const WindowOracle& window);

struct OracleConfig {
  double loss_threshold = 0.005;
  double compress_threshold = 0.005;
  /// Inclusive frame range (positions in the trajectory) where contact must
  /// hold; an unset end means the last frame.
  std::size_t first_contact_frame = 0;
  std::optional<std::size_t> last_contact_frame;

  void validate() const;
};

/// Per contact frame: OverCompression if the primary position is deeper
/// than compress_threshold inside the object's convex hull, ContactLoss if
/// its distance to the cloud exceeds loss_threshold. The lowest failing
/// frame is reported. Without a valid hull (< 4 non-coplanar points) the
/// depth check is skipped and the detail text says so.
VerifierResult verify_geometric(const BimanualTrajectory& traj, const PointCloud& object,
                                Arm primary, const OracleConfig& cfg);

class WindowVerifier final : public Verifier {
 public:
  explicit WindowVerifier(WindowOracle window) : window_(window) {}
  VerifierResult verify(const BimanualTrajectory& traj, const PointCloud& object,
                        Arm primary) const override {
    return verify_window(traj, object, primary, window_);
  }
  const WindowOracle& window() const { return window_; }

 private:
  WindowOracle window_;
};

class GeometricVerifier final : public Verifier {
 public:
  explicit GeometricVerifier(OracleConfig cfg) : cfg_(cfg) {}
  VerifierResult verify(const BimanualTrajectory& traj, const PointCloud& object,
                        Arm primary) const override {
    return verify_geometric(traj, object, primary, cfg_);
  }
  const OracleConfig& config() const { return cfg_; }

 private:
  OracleConfig cfg_;
};

}  // namespace binomap
