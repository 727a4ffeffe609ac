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

// binomap: command-line front end for the bimanual primitive pipeline.
//
// Every subcommand reads and writes the JSON formats in binomap/io.hpp and
// writes fixed file names into --out. Failures print one JSON object
// {error, stage, message, frame_index} on stderr and exit with
// binomap::exit_code(kind).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "binomap/cloud_io.hpp"
#include "binomap/error.hpp"
#include "binomap/io.hpp"
#include "binomap/pipeline.hpp"
#include "binomap/plot.hpp"
#include "binomap/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace binomap;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format = "text";
  std::string hands, scene, traj, object, record, new_cloud, base, input, scenario;
  std::uint64_t seed = 0;
  double sigma = 0.002;
  std::optional<double> window_lo, window_hi;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("binomap");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("BINOMAP_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(ErrorKind::InvalidConfig, message).with_stage("cli");
}

fs::path require(const std::string& value, const char* flag) {
  if (value.empty()) usage_error(std::string(flag) + " is required");
  return value;
}

fs::path out_dir(const Options& o, const fs::path& fallback = {}) {
  fs::path dir = o.out.empty() ? fallback : fs::path(o.out);
  if (dir.empty()) usage_error("--out is required");
  fs::create_directories(dir);
  return dir;
}

std::optional<PipelineConfig> maybe_config(const Options& o) {
  if (o.config.empty()) return std::nullopt;
  return load_config(o.config);
}

PipelineConfig need_config(const Options& o) {
  return load_config(require(o.config, "--config"));
}

template <typename F>
auto at_stage(const char* name, F&& f) {
  try {
    return f();
  } catch (Error& e) {
    if (e.stage().empty()) e.with_stage(name);
    throw;
  }
}

void report(const Options& o, json summary) {
  if (o.format == "json") {
    std::cout << summary.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : summary.items()) spdlog::info("{}: {}", key, value.dump());
}

int cmd_retarget(const Options& o) {
  const PipelineConfig cfg = need_config(o);
  const fs::path hands_path = o.hands.empty() ? cfg.paths.hands : fs::path(o.hands);
  const fs::path scene_path = o.scene.empty() ? cfg.paths.scene : fs::path(o.scene);
  const auto coarse = at_stage("retarget", [&] {
    const HandSequence hands = io::load_hands(require(hands_path.string(), "--hands"));
    const PointCloud scene = io::load_cloud(require(scene_path.string(), "--scene"));
    if (!scene.is_organized()) throw Error(ErrorKind::FormatError, "scene cloud must be organized");
    return extract_coarse(hands, scene, cfg.camera, cfg.joints);
  });
  const fs::path dir = out_dir(o, cfg.paths.out);
  io::write_json(dir / kCoarseFile, io::to_json(coarse));
  report(o, {{"command", "retarget"}, {"frames", coarse.size()}, {"output", (dir / kCoarseFile).string()}});
  return 0;
}

int cmd_smooth(const Options& o) {
  const auto cfg = maybe_config(o);
  const auto result = at_stage("smooth", [&] {
    const BimanualTrajectory traj = io::load_trajectory(require(o.traj, "--traj"));
    return cfg ? smooth_trajectory(traj, cfg->smooth_left, cfg->smooth_right)
               : smooth_trajectory(traj, SmoothConfig{}, SmoothConfig{});
  });
  const fs::path dir = out_dir(o);
  io::write_json(dir / kSmoothFile, io::to_json(result.trajectory));
  io::write_json(dir / kSmoothDiagFile, io::to_json(result));
  report(o, {{"command", "smooth"},
             {"frames", result.trajectory.size()},
             {"anchors_left", result.left.anchors.indices},
             {"anchors_right", result.right.anchors.indices}});
  return 0;
}

int cmd_adjust(const Options& o) {
  PipelineConfig cfg = need_config(o);
  if (o.window_lo || o.window_hi) {
    cfg.verifier.type = VerifierSpec::Type::Window;
    cfg.verifier.window.lo = o.window_lo.value_or(0.0);
    cfg.verifier.window.hi = o.window_hi.value_or(std::numeric_limits<double>::infinity());
    cfg.validate();
  }
  const fs::path object_path = o.object.empty() ? cfg.paths.object : fs::path(o.object);
  cfg.paths.object = require(object_path.string(), "--object");
  const PointCloud object = at_stage("load", [&] { return io::load_cloud(cfg.paths.object); });
  BimanualTrajectory traj = at_stage("load", [&] { return io::load_trajectory(require(o.traj, "--traj")); });
  if (cfg.pattern.synchronized()) {
    traj = at_stage("synchronize", [&] { return synchronize_arms(traj, cfg.pattern); });
  }
  const auto verifier = cfg.verifier.make();
  const AdjustResult result = at_stage("adjust", [&] {
    return iterate_adjust(traj, cfg.pattern, object, cfg.adjust, *verifier);
  });
  const fs::path dir = out_dir(o, cfg.paths.out);
  io::write_attempt_log(dir / kAttemptsFile, result.log);
  for (const AdjustAttempt& a : result.log) {
    spdlog::info("k={} d={:.6f} s={:.6f} {}", a.k, a.d, a.s, to_string(a.result.outcome));
  }
  if (!result.converged) {
    throw Error(ErrorKind::AllAttemptsFailed,
                "no attempt in k = 1.." + std::to_string(cfg.adjust.k_max) + " succeeded")
        .with_stage("adjust");
  }
  const io::RecordFile rec = make_record(cfg, result, object, dir);
  io::save_record(dir / kRecordFile, rec);
  report(o, {{"command", "adjust"}, {"k_used", result.k_used}, {"d", rec.record.d}, {"s", rec.record.s}});
  return 0;
}

int cmd_param(const Options& o) {
  const auto cfg = maybe_config(o);
  const SliceConfig slice = cfg ? cfg->slice : SliceConfig{};
  const io::RecordFile rec = at_stage("load", [&] { return io::load_record(require(o.record, "--record")); });
  const PointCloud moved = at_stage("load", [&] { return io::load_cloud(require(o.new_cloud, "--new")); });
  const AdaptResult adapted = at_stage("param", [&] { return adapt_primitive(rec.record, moved, slice); });
  const fs::path dir = out_dir(o);
  io::write_json(dir / "adapted.json", io::to_json(adapted.trajectory));
  const auto vec = [](const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); };
  const json diag = {{"delta", adapted.delta},
                     {"s", adapted.s},
                     {"anchor", vec(adapted.anchor)},
                     {"new_start", vec(adapted.new_start)},
                     {"displacement", vec(adapted.displacement)},
                     {"operations", adapted.operations}};
  io::write_json(dir / "adapted_diagnostics.json", diag);
  report(o, {{"command", "param"}, {"delta", adapted.delta}, {"s", adapted.s}});
  return 0;
}

int cmd_relocate(const Options& o) {
  const BimanualTrajectory traj = at_stage("load", [&] { return io::load_trajectory(require(o.traj, "--traj")); });
  const PointCloud base = at_stage("load", [&] { return io::load_cloud(require(o.base, "--base")); });
  const PointCloud moved = at_stage("load", [&] { return io::load_cloud(require(o.new_cloud, "--new")); });
  const Eigen::Vector3d shift = at_stage("relocate", [&] { return planar_displacement(base, moved); });
  const fs::path dir = out_dir(o);
  io::write_json(dir / "relocated.json", io::to_json(translate(traj, shift)));
  io::write_json(dir / "relocated_diagnostics.json",
                 {{"displacement", json::array({shift.x(), shift.y(), shift.z()})}});
  report(o, {{"command", "relocate"}, {"displacement", {shift.x(), shift.y(), shift.z()}}});
  return 0;
}

int cmd_pipeline(const Options& o) {
  const PipelineConfig cfg = need_config(o);
  const fs::path dir = out_dir(o, cfg.paths.out);
  const PipelineResult result = run_pipeline(cfg, dir);
  report(o, {{"command", "pipeline"},
             {"k_used", result.adjusted.k_used},
             {"d", result.record.record.d},
             {"s", result.record.record.s},
             {"record", (dir / kRecordFile).string()}});
  return 0;
}

int cmd_plot(const Options& o) {
  PlotInput input;
  if (o.traj.empty() == o.record.empty()) usage_error("plot takes exactly one of --traj or --record");
  if (!o.record.empty()) {
    io::RecordFile rec = at_stage("load", [&] { return io::load_record(o.record); });
    input.trajectory = std::move(rec.record.trajectory);
    input.attempts = std::move(rec.attempts);
  } else {
    input.trajectory = at_stage("load", [&] { return io::load_trajectory(o.traj); });
  }
  if (const auto cfg = maybe_config(o)) input.smooth = cfg->smooth_right;
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw Error(ErrorKind::FormatError, "cannot open " + o.input).with_stage("load");
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      try {
        input.attempts.push_back(io::attempt_from_json(json::parse(line)));
      } catch (const json::exception& e) {
        throw Error(ErrorKind::FormatError, o.input + ": " + e.what()).with_stage("load");
      }
    }
  }
  const PlotOutput plots = at_stage("plot", [&] { return make_plots(input); });
  const fs::path dir = out_dir(o);
  io::write_json(dir / "stats.json", plots.stats);
  for (const auto& [name, svg] : plots.svgs) {
    std::ofstream(dir / name) << svg;
  }
  report(o, {{"command", "plot"}, {"stats", (dir / "stats.json").string()}});
  return 0;
}

int cmd_gen(const Options& o) {
  ScenarioOptions opts;
  opts.name = o.scenario;
  opts.seed = o.seed;
  opts.sigma = o.sigma;
  if (opts.name.empty()) usage_error("--scenario is required");
  const ScenarioData data = at_stage("gen", [&] { return generate_scenario(opts); });
  const fs::path dir = out_dir(o);
  write_scenario(data, dir);
  report(o, {{"command", "gen"}, {"scenario", data.name}, {"frames", data.ground_truth.size()},
             {"expected_k", data.expected_k}});
  return 0;
}

int cmd_verify(const Options& o) {
  const PipelineConfig cfg = need_config(o);
  const fs::path object_path = o.object.empty() ? cfg.paths.object : fs::path(o.object);
  const PointCloud object = at_stage("load", [&] { return io::load_cloud(require(object_path.string(), "--object")); });
  const BimanualTrajectory traj = at_stage("load", [&] { return io::load_trajectory(require(o.traj, "--traj")); });
  const VerifierResult result = at_stage("verify", [&] {
    return cfg.verifier.make()->verify(traj, object, cfg.pattern.primary_arm);
  });
  std::cout << io::to_json(result).dump() << '\n';
  return result.success() ? 0 : 1;
}

void print_error(const Error& e) {
  json j = {{"error", std::string(to_string(e.kind()))},
            {"stage", e.stage().empty() ? json(nullptr) : json(e.stage())},
            {"message", e.what()},
            {"frame_index", e.frame_index() ? json(*e.frame_index()) : json(nullptr)}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Options o;
  CLI::App app{"binomap: bimanual non-prehensile primitives from human demonstrations"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Pipeline config JSON");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--format", o.format, "Summary format on stdout")->check(CLI::IsMember({"text", "json"}));
  };

  auto* retarget = app.add_subcommand("retarget", "Hand keypoints + organized scene -> coarse trajectory");
  retarget->add_option("--hands", o.hands, "Hand keypoint JSON");
  retarget->add_option("--scene", o.scene, "Organized scene cloud (.json)");
  auto* smooth = app.add_subcommand("smooth", "Coplanar spline smoothing with anchored slerp");
  smooth->add_option("--traj", o.traj, "Trajectory JSON");
  auto* adjust = app.add_subcommand("adjust", "Iterative contact-distance adjustment");
  adjust->add_option("--traj", o.traj, "Trajectory JSON");
  adjust->add_option("--object", o.object, "Object cloud");
  adjust->add_option("--window-lo", o.window_lo, "Override: window verifier lower bound (m)");
  adjust->add_option("--window-hi", o.window_hi, "Override: window verifier upper bound (m)");
  auto* param = app.add_subcommand("param", "Resize a verified primitive to a new object");
  param->add_option("--record", o.record, "Primitive record JSON");
  param->add_option("--new", o.new_cloud, "New object cloud");
  auto* relocate = app.add_subcommand("relocate", "Translate a trajectory with its object");
  relocate->add_option("--traj", o.traj, "Trajectory JSON");
  relocate->add_option("--base", o.base, "Original object cloud");
  relocate->add_option("--new", o.new_cloud, "Moved object cloud");
  auto* pipeline = app.add_subcommand("pipeline", "retarget -> smooth -> adjust -> record");
  auto* plot = app.add_subcommand("plot", "SVG views and stats for a trajectory");
  plot->add_option("--traj", o.traj, "Trajectory JSON");
  plot->add_option("--record", o.record, "Primitive record JSON (trajectory and attempts)");
  plot->add_option("--input", o.input, "Attempt log (.jsonl)");
  auto* gen = app.add_subcommand("gen", "Generate a synthetic scenario");
  gen->add_option("--scenario", o.scenario, "pivot-bowl | poke-cup | push-basket | wrap-ball");
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--sigma", o.sigma, "Joint noise standard deviation (m)");
  auto* verify = app.add_subcommand("verify", "Run the configured verifier on a trajectory");
  verify->add_option("--traj", o.traj, "Trajectory JSON");
  verify->add_option("--object", o.object, "Object cloud");
  for (CLI::App* sub : {retarget, smooth, adjust, param, relocate, pipeline, plot, gen, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ErrorKind::InvalidConfig);
  }

  try {
    if (*retarget) return cmd_retarget(o);
    if (*smooth) return cmd_smooth(o);
    if (*adjust) return cmd_adjust(o);
    if (*param) return cmd_param(o);
    if (*relocate) return cmd_relocate(o);
    if (*pipeline) return cmd_pipeline(o);
    if (*plot) return cmd_plot(o);
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
  } catch (const Error& e) {
    print_error(e);
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    print_error(Error(ErrorKind::FormatError, e.what()));
    return exit_code(ErrorKind::FormatError);
  } catch (const std::exception& e) {
    print_error(Error(ErrorKind::PreconditionViolation, e.what()));
    return 3;
  }
  return 0;
}
