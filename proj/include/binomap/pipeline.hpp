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

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "binomap/contact_adjust.hpp"
#include "binomap/hand_retarget.hpp"
#include "binomap/io.hpp"
#include "binomap/primitive_param.hpp"
#include "binomap/sim_oracle.hpp"
#include "binomap/traj_smooth.hpp"

namespace binomap {

struct VerifierSpec {
  enum class Type { Window, Geometric };
  Type type = Type::Window;
  WindowOracle window;
  OracleConfig geometric;

  std::unique_ptr<Verifier> make() const;
};

struct PipelinePaths {
  std::filesystem::path hands;
  std::filesystem::path scene;
  std::filesystem::path object;
  std::filesystem::path out;
};

struct PipelineConfig {
  std::string skill;
  SkillPattern pattern;
  AdjustConfig adjust;
  CameraModel camera;
  JointIndexConfig joints;
  SmoothConfig smooth_left;
  SmoothConfig smooth_right;
  SliceConfig slice;
  VerifierSpec verifier;
  PipelinePaths paths;  // absolute, resolved against the config directory
  nlohmann::json source = nlohmann::json::object();

  /// Numeric ranges and path distinctness.
  void validate() const;
  /// Throws InvalidConfig unless hands, scene and object paths are set.
  void require_inputs() const;
};

/// Relative paths in `j` resolve against `base_dir`.
PipelineConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

inline constexpr const char* kCoarseFile = "coarse.json";
inline constexpr const char* kSmoothFile = "smooth.json";
inline constexpr const char* kSmoothDiagFile = "smooth_diagnostics.json";
inline constexpr const char* kRecordFile = "record.json";
inline constexpr const char* kAttemptsFile = "attempts.jsonl";

struct PipelineResult {
  BimanualTrajectory coarse;
  SmoothResult smoothed;
  BimanualTrajectory synchronized;  // equals smoothed.trajectory when not synchronized
  AdjustResult adjusted;
  io::RecordFile record;
};

/// Runs every stage in memory. Throws AllAttemptsFailed only from
/// `run_pipeline`; here a non-converged result is returned as is.
PipelineResult run_stages(const PipelineConfig& cfg, const HandSequence& hands,
                          const PointCloud& scene, const PointCloud& object);

/// Loads inputs, runs, and writes every intermediate into `out_dir`.
/// Errors carry the failing stage name.
PipelineResult run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out_dir);

io::RecordFile make_record(const PipelineConfig& cfg, const AdjustResult& adjusted,
                           const PointCloud& object, const std::filesystem::path& record_dir);

}  // namespace binomap
