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

#include "binomap/pipeline.hpp"

#include <cmath>

#include "binomap/cloud_io.hpp"
#include "binomap/error.hpp"

namespace binomap {

namespace fs = std::filesystem;
using nlohmann::json;

std::unique_ptr<Verifier> VerifierSpec::make() const {
  if (type == Type::Window) return std::make_unique<WindowVerifier>(window);
  return std::make_unique<GeometricVerifier>(geometric);
}

void PipelineConfig::validate() const {
  adjust.validate();
  joints.validate();
  smooth_left.validate();
  smooth_right.validate();
  slice.validate();
  if (verifier.type == VerifierSpec::Type::Geometric) verifier.geometric.validate();
  if (!(verifier.window.lo >= 0.0) || !(verifier.window.hi >= verifier.window.lo)) {
    throw Error(ErrorKind::InvalidConfig, "window verifier needs 0 <= lo <= hi");
  }
  const auto& k = camera.intrinsics;
  if (!(k.fx > 0.0) || !(k.fy > 0.0) || !std::isfinite(k.cx) || !std::isfinite(k.cy)) {
    throw Error(ErrorKind::InvalidConfig, "camera focal lengths must be positive");
  }
  const fs::path all[] = {paths.hands, paths.scene, paths.object, paths.out};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!all[i].empty() && all[i].lexically_normal() == all[j].lexically_normal()) {
        throw Error(ErrorKind::InvalidConfig, "config paths must be distinct: " + all[i].string());
      }
    }
  }
}

void PipelineConfig::require_inputs() const {
  if (paths.hands.empty() || paths.scene.empty() || paths.object.empty()) {
    throw Error(ErrorKind::InvalidConfig, "paths.hands, paths.scene and paths.object are required");
  }
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<T>();
}

SmoothConfig smooth_from(const json& j, SmoothConfig base) {
  if (!j.is_object()) return base;
  base.top_n = get_or(j, "top_n", base.top_n);
  base.spline_control_points = get_or(j, "control_points", base.spline_control_points);
  base.spline_smoothing_weight = get_or(j, "smoothing_weight", base.spline_smoothing_weight);
  return base;
}

fs::path resolve(const json& paths, const char* key, const fs::path& base_dir) {
  if (!paths.contains(key)) return {};
  fs::path p = paths[key].get<std::string>();
  return (p.is_absolute() ? p : base_dir / p).lexically_normal();
}

}  // namespace

PipelineConfig parse_config(const json& j, const fs::path& base_dir) {
  PipelineConfig cfg;
  try {
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
    cfg.source = j;
    cfg.skill = j.at("skill").get<std::string>();
    try {
      cfg.pattern.kind = parse_skill(cfg.skill);
      cfg.pattern.primary_arm = parse_arm(get_or<std::string>(j, "primary_arm", "right"));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }

    cfg.adjust.d1 = get_or(j, "d1", cfg.adjust.d1);
    cfg.adjust.gamma = get_or(j, "gamma", cfg.adjust.gamma);
    cfg.adjust.k_max = get_or(j, "k_max", cfg.adjust.k_max);

    const json& cam = j.at("camera");
    cfg.camera.intrinsics = {cam.at("fx").get<double>(), cam.at("fy").get<double>(),
                             cam.at("cx").get<double>(), cam.at("cy").get<double>()};
    if (cam.contains("world_from_camera")) {
      const json& ext = cam["world_from_camera"];
      const auto r = ext.at("R").get<std::vector<double>>();
      const auto t = ext.at("t").get<std::vector<double>>();
      if (r.size() != 9 || t.size() != 3) {
        throw Error(ErrorKind::InvalidConfig, "world_from_camera needs R[9] and t[3]");
      }
      Rotation rot;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) rot(a, b) = r[static_cast<std::size_t>(3 * a + b)];
      }
      if (!is_rotation(rot, 1e-6)) throw Error(ErrorKind::InvalidConfig, "world_from_camera.R is not a rotation");
      cfg.camera.world_from_camera.linear() = rot;
      cfg.camera.world_from_camera.translation() = Eigen::Vector3d(t[0], t[1], t[2]);
    }

    if (j.contains("joints")) {
      const json& jn = j["joints"];
      cfg.joints.wrist = get_or(jn, "wrist", cfg.joints.wrist);
      cfg.joints.thumb_tip = get_or(jn, "thumb_tip", cfg.joints.thumb_tip);
      cfg.joints.index_tip = get_or(jn, "index_tip", cfg.joints.index_tip);
      cfg.joints.ring_tip = get_or(jn, "ring_tip", cfg.joints.ring_tip);
    }

    const json smooth = j.value("smooth", json::object());
    const SmoothConfig shared = smooth_from(smooth, SmoothConfig{});
    cfg.smooth_left = smooth_from(smooth.value("left", json::object()), shared);
    cfg.smooth_right = smooth_from(smooth.value("right", json::object()), shared);

    if (j.contains("slice")) {
      const json& s = j["slice"];
      if (s.contains("height") && !s["height"].is_null()) cfg.slice.slice_height = s["height"].get<double>();
      cfg.slice.half_thickness = get_or(s, "half_thickness", cfg.slice.half_thickness);
      cfg.slice.direction_tolerance = get_or(s, "direction_tolerance", cfg.slice.direction_tolerance);
      cfg.slice.max_slice_points = get_or(s, "max_points", cfg.slice.max_slice_points);
    }

    const std::string verifier = get_or<std::string>(j, "verifier", "window");
    const json params = j.value("verifier_params", json::object());
    if (verifier == "window") {
      cfg.verifier.type = VerifierSpec::Type::Window;
      cfg.verifier.window.lo = get_or(params, "lo", 0.0);
      cfg.verifier.window.hi = get_or(params, "hi", std::numeric_limits<double>::infinity());
    } else if (verifier == "geometric") {
      cfg.verifier.type = VerifierSpec::Type::Geometric;
      auto& g = cfg.verifier.geometric;
      g.loss_threshold = get_or(params, "loss_threshold", g.loss_threshold);
      g.compress_threshold = get_or(params, "compress_threshold", g.compress_threshold);
      if (params.contains("contact_frames")) {
        const auto frames = params["contact_frames"].get<std::vector<std::size_t>>();
        if (frames.size() != 2) throw Error(ErrorKind::InvalidConfig, "contact_frames needs [first, last]");
        g.first_contact_frame = frames[0];
        g.last_contact_frame = frames[1];
      }
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown verifier \"" + verifier + "\"");
    }

    const json paths = j.value("paths", json::object());
    cfg.paths.hands = resolve(paths, "hands", base_dir);
    cfg.paths.scene = resolve(paths, "scene", base_dir);
    cfg.paths.object = resolve(paths, "object", base_dir);
    cfg.paths.out = resolve(paths, "out", base_dir);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  json j;
  try {
    j = io::read_json(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  return parse_config(j, path.parent_path());
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (Error& e) {
    if (e.stage().empty()) e.with_stage(name);
    throw;
  }
}

}  // namespace

io::RecordFile make_record(const PipelineConfig& cfg, const AdjustResult& adjusted,
                           const PointCloud& object, const fs::path& record_dir) {
  io::RecordFile rec;
  rec.record.trajectory = adjusted.trajectory;
  rec.record.base_cloud = object;
  const fs::path obj = fs::weakly_canonical(cfg.paths.object);
  const fs::path dir = fs::weakly_canonical(record_dir);
  fs::path rel = obj.lexically_relative(dir);
  rec.record.base_cloud_path = (rel.empty() ? obj : rel).generic_string();
  rec.record.pattern = cfg.pattern;
  rec.record.skill = cfg.skill;
  if (!adjusted.log.empty()) {
    rec.record.d = adjusted.final_attempt().d;
    rec.record.s = adjusted.final_attempt().s;
  }
  rec.k_used = adjusted.k_used;
  rec.converged = adjusted.converged;
  rec.anchor = adjusted.anchor;
  rec.attempts = adjusted.log;
  rec.provenance = {{"d1", cfg.adjust.d1},
                    {"gamma", cfg.adjust.gamma},
                    {"k_max", cfg.adjust.k_max},
                    {"config", cfg.source}};
  return rec;
}

PipelineResult run_stages(const PipelineConfig& cfg, const HandSequence& hands,
                          const PointCloud& scene, const PointCloud& object) {
  PipelineResult out;
  out.coarse = stage("retarget", [&] { return extract_coarse(hands, scene, cfg.camera, cfg.joints); });
  out.smoothed = stage("smooth", [&] {
    return smooth_trajectory(out.coarse, cfg.smooth_left, cfg.smooth_right);
  });
  out.synchronized = stage("synchronize", [&] {
    return cfg.pattern.synchronized() ? synchronize_arms(out.smoothed.trajectory, cfg.pattern)
                                      : out.smoothed.trajectory;
  });
  const auto verifier = cfg.verifier.make();
  out.adjusted = stage("adjust", [&] {
    return iterate_adjust(out.synchronized, cfg.pattern, object, cfg.adjust, *verifier);
  });
  return out;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const fs::path& out_dir) {
  cfg.require_inputs();
  const HandSequence hands = stage("load", [&] { return io::load_hands(cfg.paths.hands); });
  const PointCloud scene = stage("load", [&] { return io::load_cloud(cfg.paths.scene); });
  const PointCloud object = stage("load", [&] { return io::load_cloud(cfg.paths.object); });
  if (!scene.is_organized()) {
    throw Error(ErrorKind::FormatError, "scene cloud must be organized").with_stage("load");
  }
  fs::create_directories(out_dir);

  PipelineResult out = run_stages(cfg, hands, scene, object);
  io::write_json(out_dir / kCoarseFile, io::to_json(out.coarse));
  io::write_json(out_dir / kSmoothFile, io::to_json(out.synchronized));
  io::write_json(out_dir / kSmoothDiagFile, io::to_json(out.smoothed));
  io::write_attempt_log(out_dir / kAttemptsFile, out.adjusted.log);
  if (!out.adjusted.converged) {
    throw Error(ErrorKind::AllAttemptsFailed,
                "no attempt in k = 1.." + std::to_string(cfg.adjust.k_max) + " succeeded")
        .with_stage("adjust");
  }
  out.record = make_record(cfg, out.adjusted, object, out_dir);
  io::save_record(out_dir / kRecordFile, out.record);
  return out;
}

}  // namespace binomap
