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

#include "binomap/cloud_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "binomap/error.hpp"

namespace binomap::io {

namespace {

using nlohmann::json;

constexpr const char* kCloudVersion = "binomap-cloud/1";

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FormatError, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::FormatError, "cannot write " + path.string());
  out.precision(17);
  return out;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorKind::FormatError, "bad number '" + token + "' in " + path.string());
  }
  return value;
}

void check_finite(const Point3& p, const std::filesystem::path& path) {
  if (!p.allFinite()) throw Error(ErrorKind::FormatError, "non-finite point in " + path.string());
}

}  // namespace

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "ply") {
    throw Error(ErrorKind::FormatError, path.string() + " is not a PLY file");
  }

  std::size_t vertex_count = 0;
  bool in_vertex = false;
  bool ascii = false;
  std::vector<std::string> props;
  while (std::getline(in, line)) {
    std::istringstream ls(trim(line));
    std::string word;
    ls >> word;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = fmt == "ascii";
    } else if (word == "element") {
      std::string name;
      ls >> name;
      in_vertex = name == "vertex";
      if (in_vertex) ls >> vertex_count;
    } else if (word == "property" && in_vertex) {
      std::string type, name;
      ls >> type >> name;
      if (type == "list") throw Error(ErrorKind::FormatError, "list properties on vertices unsupported");
      props.push_back(name);
    } else if (word == "end_header") {
      break;
    }
  }
  if (!ascii) throw Error(ErrorKind::FormatError, "only ASCII PLY is supported: " + path.string());

  auto column = [&](const std::string& name) {
    const auto it = std::find(props.begin(), props.end(), name);
    if (it == props.end()) throw Error(ErrorKind::FormatError, "PLY lacks property " + name);
    return static_cast<std::size_t>(it - props.begin());
  };
  const std::size_t cx = column("x"), cy = column("y"), cz = column("z");

  std::vector<Point3> points;
  points.reserve(vertex_count);
  std::vector<std::string> tokens(props.size());
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorKind::FormatError, "PLY vertex list truncated");
    std::istringstream ls(line);
    for (auto& t : tokens) {
      if (!(ls >> t)) throw Error(ErrorKind::FormatError, "PLY vertex row too short");
    }
    Point3 p(parse_double(tokens[cx], path), parse_double(tokens[cy], path),
             parse_double(tokens[cz], path));
    points.push_back(p);
  }
  return PointCloud(std::move(points));
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  out << "ply\nformat ascii 1.0\ncomment units meters\n"
      << "element vertex " << cloud.size() << "\n"
      << "property double x\nproperty double y\nproperty double z\nend_header\n";
  for (const Point3& p : cloud.points()) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
}

PointCloud read_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::FormatError, "empty CSV " + path.string());

  auto split = [](const std::string& row) {
    std::vector<std::string> out;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
  };
  const std::vector<std::string> header = split(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorKind::FormatError, "CSV header must name x,y,z: " + path.string());
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cx = column("x"), cy = column("y"), cz = column("z");

  std::vector<Point3> points;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() < header.size()) throw Error(ErrorKind::FormatError, "CSV row too short");
    points.emplace_back(parse_double(cells[cx], path), parse_double(cells[cy], path),
                        parse_double(cells[cz], path));
  }
  return PointCloud(std::move(points));
}

void write_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  out << "x,y,z\n";
  for (const Point3& p : cloud.points()) out << p.x() << ',' << p.y() << ',' << p.z() << '\n';
}

PointCloud read_organized_json(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
    const int height = j.at("height").get<int>();
    const int width = j.at("width").get<int>();
    const auto& pts = j.at("points");
    const auto& valid = j.at("valid");
    std::vector<Point3> points;
    std::vector<std::uint8_t> mask;
    points.reserve(pts.size());
    mask.reserve(valid.size());
    for (const auto& p : pts) {
      if (p.size() != 3) throw Error(ErrorKind::FormatError, "points must be [x,y,z] triples");
      Point3 q(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
      check_finite(q, path);
      points.push_back(q);
    }
    for (const auto& v : valid) mask.push_back(v.get<int>() != 0 ? 1 : 0);
    return PointCloud::organized(height, width, std::move(points), std::move(mask));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::FormatError, path.string() + ": " + e.what());
  }
}

void write_organized_json(const std::filesystem::path& path, const PointCloud& cloud) {
  const OrganizedGrid& grid = cloud.grid();
  json j;
  j["version"] = kCloudVersion;
  j["units"] = "m";
  j["height"] = grid.height;
  j["width"] = grid.width;
  json pts = json::array();
  for (const Point3& p : cloud.points()) pts.push_back({p.x(), p.y(), p.z()});
  j["points"] = std::move(pts);
  json valid = json::array();
  for (std::uint8_t v : grid.valid) valid.push_back(static_cast<int>(v));
  j["valid"] = std::move(valid);
  std::ofstream out = open_out(path);
  out << j.dump() << '\n';
}

PointCloud load_cloud(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".ply") return read_ply(path);
  if (ext == ".csv") return read_csv(path);
  if (ext == ".json") return read_organized_json(path);
  throw Error(ErrorKind::FormatError, "unknown point cloud extension: " + path.string());
}

void save_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
  const std::string ext = path.extension().string();
  if (ext == ".ply") return write_ply(path, cloud);
  if (ext == ".csv") return write_csv(path, cloud);
  if (ext == ".json") return write_organized_json(path, cloud);
  throw Error(ErrorKind::FormatError, "unknown point cloud extension: " + path.string());
}

}  // namespace binomap::io
