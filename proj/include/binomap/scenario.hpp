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

// Synthetic demonstrations with known ground truth. Each scenario places one
// object, a demonstration plane holding both hand paths, and a pinhole camera.
// The scene cloud is the back-projected demonstration plane as seen by that
// camera, so retargeted contacts land on the plane up to pixel quantization.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "binomap/hand_retarget.hpp"
#include "binomap/traj_smooth.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

struct ScenarioOptions {
  std::string name;
  std::uint64_t seed = 0;
  double sigma = 0.002;  // per-joint isotropic noise, m
};

struct ScenarioData {
  std::string name;
  HandSequence hands;
  PointCloud scene;   // organized, camera frame
  PointCloud object;  // world frame
  BimanualTrajectory ground_truth;
  CameraModel camera;
  Plane demo_plane;
  SmoothConfig smooth;
  int expected_k = 0;
  nlohmann::json config;  // pipeline config with paths relative to the scenario directory
};

std::vector<std::string> scenario_names();

/// Throws UnknownScenario for names outside scenario_names().
ScenarioData generate_scenario(const ScenarioOptions& options);

/// Writes hands.json, scene.json, object.ply, ground_truth.json,
/// expected.json and config.json into `dir`.
void write_scenario(const ScenarioData& data, const std::filesystem::path& dir);

/// Adds isotropic N(0, sigma^2) noise to every position, orientations untouched.
BimanualTrajectory add_position_noise(const BimanualTrajectory& traj, double sigma,
                                      std::uint64_t seed);

/// Root-mean-square position error of one arm against a reference.
double position_rms(const BimanualTrajectory& a, const BimanualTrajectory& b, Arm arm);

}  // namespace binomap
