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

#include "binomap/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "binomap/cloud_io.hpp"
#include "binomap/error.hpp"

namespace binomap::io {

namespace {

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorKind::FormatError, std::string(what) + " must be a 3-element array");
  }
  Eigen::Vector3d v(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
  if (!v.allFinite()) throw Error(ErrorKind::FormatError, std::string(what) + " is not finite");
  return v;
}

json rotation_json(const Rotation& r) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.push_back(r(i, j));
  }
  return out;
}

Rotation rotation_from(const json& j) {
  if (!j.is_array() || j.size() != 9) {
    throw Error(ErrorKind::FormatError, "R must be 9 numbers (row-major)");
  }
  Rotation r;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) r(i, k) = j[static_cast<std::size_t>(3 * i + k)].get<double>();
  }
  return r;
}

void check_version(const json& j, const char* expected) {
  if (!j.is_object() || !j.contains("version") || j["version"] != expected) {
    throw Error(ErrorKind::FormatError, std::string("expected version \"") + expected + "\"");
  }
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FormatError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::FormatError, path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::FormatError, "cannot write " + path.string());
  out << dump(j);
}

json to_json(const BimanualTrajectory& traj) {
  json frames = json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    frames.push_back({
        {"timestep", traj.timesteps[i]},
        {"left", {{"p", vec_json(traj.left[i].position)}, {"R", rotation_json(traj.left[i].orientation)}}},
        {"right",
         {{"p", vec_json(traj.right[i].position)}, {"R", rotation_json(traj.right[i].orientation)}}},
    });
  }
  return {{"version", kTrajectoryVersion}, {"units", "m"}, {"frames", std::move(frames)}};
}

BimanualTrajectory trajectory_from_json(const json& j) {
  check_version(j, kTrajectoryVersion);
  return guarded("trajectory", [&] {
    BimanualTrajectory traj;
    const json& frames = j.at("frames");
    if (!frames.is_array() || frames.empty()) {
      throw Error(ErrorKind::FormatError, "trajectory has no frames");
    }
    for (const json& f : frames) {
      traj.timesteps.push_back(f.at("timestep").get<std::int64_t>());
      for (Arm a : {Arm::Left, Arm::Right}) {
        const json& pose = f.at(std::string(to_string(a)));
        traj.arm(a).push_back(Pose{vec_from(pose.at("p"), "p"), rotation_from(pose.at("R"))});
      }
    }
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (traj.timesteps[i] <= traj.timesteps[i - 1]) {
        throw Error(ErrorKind::FormatError, "timesteps must be strictly increasing");
      }
    }
    traj.validate();
    return traj;
  });
}

BimanualTrajectory load_trajectory(const std::filesystem::path& path) {
  return trajectory_from_json(read_json(path));
}

json to_json(const HandSequence& seq) {
  std::map<std::int64_t, json> frames;
  auto add = [&](const std::vector<HandFrame>& hand, const char* key) {
    for (const HandFrame& f : hand) {
      json joints = json::array();
      for (const Point3& p : f.joints) joints.push_back(vec_json(p));
      json& entry = frames[f.frame_index];
      entry["frame_index"] = f.frame_index;
      entry[key] = std::move(joints);
    }
  };
  add(seq.left, "left");
  add(seq.right, "right");
  json list = json::array();
  for (auto& [_, f] : frames) list.push_back(std::move(f));
  return {{"version", kHandsVersion}, {"units", "m"}, {"t_s", seq.t_s}, {"t_e", seq.t_e},
          {"frames", std::move(list)}};
}

HandSequence hands_from_json(const json& j) {
  return guarded("hand sequence", [&] {
    if (j.contains("version") && j["version"] != kHandsVersion) {
      throw Error(ErrorKind::FormatError, std::string("expected version \"") + kHandsVersion + "\"");
    }
    HandSequence seq;
    seq.t_s = j.at("t_s").get<std::int64_t>();
    seq.t_e = j.at("t_e").get<std::int64_t>();
    std::optional<std::int64_t> previous;
    for (const json& f : j.at("frames")) {
      const auto index = f.at("frame_index").get<std::int64_t>();
      if (previous && index <= *previous) {
        throw Error(ErrorKind::FormatError, "frame indices must be strictly increasing", index);
      }
      previous = index;
      for (Arm a : {Arm::Left, Arm::Right}) {
        const std::string key(to_string(a));
        if (!f.contains(key) || f[key].is_null()) continue;
        const json& joints = f[key];
        if (!joints.is_array() || joints.size() != kHandJointCount) {
          throw Error(ErrorKind::FormatError, key + " hand must have 21 joints", index);
        }
        HandFrame frame;
        frame.handedness = a;
        frame.frame_index = index;
        for (std::size_t i = 0; i < kHandJointCount; ++i) frame.joints[i] = vec_from(joints[i], "joint");
        (a == Arm::Left ? seq.left : seq.right).push_back(frame);
      }
    }
    return seq;
  });
}

HandSequence load_hands(const std::filesystem::path& path) { return hands_from_json(read_json(path)); }

json to_json(const AdjustAttempt& a) {
  return {{"k", a.k}, {"d_k", a.d}, {"s_k", a.s}, {"outcome", std::string(to_string(a.result.outcome))},
          {"detail", a.result.detail}};
}

AdjustAttempt attempt_from_json(const json& j) {
  return guarded("attempt", [&] {
    AdjustAttempt a;
    a.k = j.at("k").get<int>();
    a.d = j.at("d_k").get<double>();
    a.s = j.at("s_k").get<double>();
    a.result.outcome = parse_outcome(j.at("outcome").get<std::string>());
    a.result.detail = j.value("detail", "");
    return a;
  });
}

void write_attempt_log(const std::filesystem::path& path, const std::vector<AdjustAttempt>& log) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::FormatError, "cannot write " + path.string());
  for (const AdjustAttempt& a : log) out << to_json(a).dump() << '\n';
}

json to_json(const SmoothResult& result) {
  json out = {{"version", kSmoothDiagVersion}};
  for (Arm a : {Arm::Left, Arm::Right}) {
    const ArmSmoothing& arm = result.arm(a);
    out[std::string(to_string(a))] = {
        {"plane", {{"normal", vec_json(arm.plane.normal)}, {"offset", arm.plane.offset}}},
        {"deviations", arm.deviations},
        {"anchors", arm.anchors.indices},
    };
  }
  return out;
}

json to_json(const RecordFile& rec) {
  json attempts = json::array();
  for (const AdjustAttempt& a : rec.attempts) attempts.push_back(to_json(a));
  return {
      {"version", kRecordVersion},
      {"skill", rec.record.skill},
      {"pattern",
       {{"kind", std::string(to_string(rec.record.pattern.kind))},
        {"primary_arm", std::string(to_string(rec.record.pattern.primary_arm))}}},
      {"d", rec.record.d},
      {"s", rec.record.s},
      {"k_used", rec.k_used},
      {"converged", rec.converged},
      {"anchor", vec_json(rec.anchor)},
      {"trajectory", to_json(rec.record.trajectory)},
      {"base_cloud", rec.record.base_cloud_path},
      {"attempts", std::move(attempts)},
      {"provenance", rec.provenance},
  };
}

RecordFile load_record(const std::filesystem::path& path) {
  const json j = read_json(path);
  check_version(j, kRecordVersion);
  RecordFile rec = guarded("record", [&] {
    RecordFile r;
    r.record.skill = j.at("skill").get<std::string>();
    r.record.pattern.kind = parse_skill(j.at("pattern").at("kind").get<std::string>());
    r.record.pattern.primary_arm = parse_arm(j.at("pattern").at("primary_arm").get<std::string>());
    r.record.d = j.at("d").get<double>();
    r.record.s = j.at("s").get<double>();
    r.k_used = j.value("k_used", 0);
    r.converged = j.value("converged", false);
    if (j.contains("anchor")) r.anchor = vec_from(j["anchor"], "anchor");
    r.record.trajectory = trajectory_from_json(j.at("trajectory"));
    r.record.base_cloud_path = j.at("base_cloud").get<std::string>();
    for (const json& a : j.value("attempts", json::array())) r.attempts.push_back(attempt_from_json(a));
    r.provenance = j.value("provenance", json::object());
    return r;
  });
  if (rec.record.d < 0.0) throw Error(ErrorKind::FormatError, "record distance d must be >= 0");
  const std::filesystem::path cloud = path.parent_path() / rec.record.base_cloud_path;
  rec.record.base_cloud = load_cloud(cloud);
  return rec;
}

void save_record(const std::filesystem::path& path, const RecordFile& rec) {
  write_json(path, to_json(rec));
}

json to_json(const VerifierResult& result) {
  return {{"outcome", std::string(to_string(result.outcome))}, {"detail", result.detail}};
}

}  // namespace binomap::io
