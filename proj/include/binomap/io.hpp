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
#include <string>
#include <vector>

#include <json.hpp>

#include "binomap/contact_adjust.hpp"
#include "binomap/hand_retarget.hpp"
#include "binomap/primitive_param.hpp"
#include "binomap/traj_smooth.hpp"
#include "binomap/trajectory.hpp"

namespace binomap::io {

using nlohmann::json;

inline constexpr const char* kTrajectoryVersion = "binomap-traj/1";
inline constexpr const char* kHandsVersion = "binomap-hands/1";
inline constexpr const char* kRecordVersion = "binomap-prim/1";
inline constexpr const char* kSmoothDiagVersion = "binomap-smooth-diag/1";

json read_json(const std::filesystem::path& path);
/// Pretty-printed with sorted keys and a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);
std::string dump(const json& j);

json to_json(const BimanualTrajectory& traj);
BimanualTrajectory trajectory_from_json(const json& j);
BimanualTrajectory load_trajectory(const std::filesystem::path& path);

json to_json(const HandSequence& seq);
HandSequence hands_from_json(const json& j);
HandSequence load_hands(const std::filesystem::path& path);

json to_json(const AdjustAttempt& attempt);
AdjustAttempt attempt_from_json(const json& j);
/// One attempt per line: {k, d_k, s_k, outcome, detail}.
void write_attempt_log(const std::filesystem::path& path, const std::vector<AdjustAttempt>& log);

json to_json(const SmoothResult& result);

/// Record bundle. `record_dir` is where the record file lives; the base
/// cloud path is stored relative to it.
struct RecordFile {
  PrimitiveRecord record;
  int k_used = 0;
  bool converged = false;
  Point3 anchor = Point3::Zero();
  std::vector<AdjustAttempt> attempts;
  json provenance = json::object();
};

json to_json(const RecordFile& rec);
/// Loads the record and the base cloud it references.
RecordFile load_record(const std::filesystem::path& path);
void save_record(const std::filesystem::path& path, const RecordFile& rec);

json to_json(const VerifierResult& result);

}  // namespace binomap::io
