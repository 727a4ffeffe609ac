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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "binomap/contact_adjust.hpp"
#include "binomap/traj_smooth.hpp"
#include "binomap/trajectory.hpp"

namespace binomap {

struct PlotInput {
  BimanualTrajectory trajectory;
  std::vector<AdjustAttempt> attempts;  // optional; drives the d-sequence chart
  SmoothConfig smooth;                  // used to overlay a smoothed curve
};

struct PlotOutput {
  nlohmann::json stats;
  std::map<std::string, std::string> svgs;  // file name -> document
};

/// Per-arm plane residuals and smoothing deviations, plus SVG views:
/// trajectory.svg (three orthographic projections), residuals.svg
/// (histogram of |plane distance|) and, when attempts are given,
/// d_sequence.svg.
PlotOutput make_plots(const PlotInput& input);

}  // namespace binomap
