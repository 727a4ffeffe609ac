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

#include "binomap/geometry.hpp"

namespace binomap::io {

/// ASCII PLY with x/y/z vertex properties; other properties are ignored.
PointCloud read_ply(const std::filesystem::path& path);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);

/// CSV with a header row naming x, y, z columns (any order, extra columns ignored).
PointCloud read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Organized clouds: {"version","units","height","width","points":[[x,y,z]...],"valid":[0|1...]}.
PointCloud read_organized_json(const std::filesystem::path& path);
void write_organized_json(const std::filesystem::path& path, const PointCloud& cloud);

/// Dispatches on the extension (.ply, .csv, .json).
PointCloud load_cloud(const std::filesystem::path& path);
void save_cloud(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace binomap::io
