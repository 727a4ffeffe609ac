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

#include "binomap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "binomap/cloud_io.hpp"
#include "binomap/contact_adjust.hpp"
#include "binomap/error.hpp"
#include "binomap/io.hpp"

namespace binomap {

namespace {

using nlohmann::json;
using std::numbers::pi;

constexpr int kImageWidth = 192;
constexpr int kImageHeight = 144;
constexpr double kFocal = 190.0;
constexpr double kFingerLength = 0.09;
constexpr double kFingerSpread = 0.25;
constexpr double kPinchHalfWidth = 0.01;
constexpr double kDropout = 0.03;
constexpr double kPatchRadius = 0.6;

using PoseFn = std::function<std::pair<Pose, Pose>(double)>;  // s in [0,1] -> (left, right)

struct Blueprint {
  std::string skill;
  Arm primary = Arm::Right;
  int frames = 40;
  Point3 camera_position;
  Point3 camera_target;
  Plane plane;
  Point3 plane_center;
  PointCloud object;
  PoseFn pose;
  json verifier;  // {"verifier": ..., "verifier_params": ...}
  int control_points = 0;
  int expected_k = 0;
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

Rotation rot(double angle, const Eigen::Vector3d& axis) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

std::vector<Point3> fibonacci_sphere(const Point3& center, double r, int n) {
  std::vector<Point3> out;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(1.0 - z * z);
    const double phi = golden * i;
    out.push_back(center + r * Point3(rho * std::cos(phi), rho * std::sin(phi), z));
  }
  return out;
}

// Travel cup with domed ends lying on its side along x. The +x dome faces the
// poking arm and is sampled densely; the far dome holds the farthest point.
std::vector<Point3> capsule_cloud(const Point3& center, double r, double half_length) {
  std::vector<Point3> out;
  for (const Point3& p : fibonacci_sphere(Point3::Zero(), r, 40000)) {
    if (p.x() >= 0.0) out.push_back(center + p + Point3(half_length, 0.0, 0.0));
  }
  for (const Point3& p : fibonacci_sphere(Point3::Zero(), r, 4000)) {
    if (p.x() < 0.0) out.push_back(center + p - Point3(half_length, 0.0, 0.0));
  }
  constexpr int kAngles = 96;
  constexpr int kRings = 41;
  for (int i = 0; i < kRings; ++i) {
    const double x = -half_length + 2.0 * half_length * i / (kRings - 1);
    for (int a = 0; a < kAngles; ++a) {
      const double t = 2.0 * pi * a / kAngles;
      out.push_back(center + Point3(x, r * std::cos(t), r * std::sin(t)));
    }
  }
  return out;
}

// Open-top box. The two side walls carry the contacts and get a 1 mm grid;
// the rest is sampled at 5 mm.
std::vector<Point3> basket_cloud(const Point3& lo, const Point3& hi) {
  std::vector<Point3> out;
  auto steps = [](double a, double b, double h) { return static_cast<int>(std::lround((b - a) / h)); };
  auto lerp = [](double a, double b, int i, int n) { return a + (b - a) * i / n; };
  const int fy = steps(lo.y(), hi.y(), 0.001), fz = steps(lo.z(), hi.z(), 0.001);
  for (int j = 0; j <= fy; ++j) {
    for (int k = 0; k <= fz; ++k) {
      const double y = lerp(lo.y(), hi.y(), j, fy), z = lerp(lo.z(), hi.z(), k, fz);
      out.emplace_back(lo.x(), y, z);
      out.emplace_back(hi.x(), y, z);
    }
  }
  const int nx = steps(lo.x(), hi.x(), 0.005), ny = steps(lo.y(), hi.y(), 0.005),
            nz = steps(lo.z(), hi.z(), 0.005);
  for (int i = 1; i < nx; ++i) {
    const double x = lerp(lo.x(), hi.x(), i, nx);
    for (int k = 0; k <= nz; ++k) {
      const double z = lerp(lo.z(), hi.z(), k, nz);
      out.emplace_back(x, lo.y(), z);
      out.emplace_back(x, hi.y(), z);
    }
    for (int j = 1; j < ny; ++j) out.emplace_back(x, lerp(lo.y(), hi.y(), j, ny), lo.z());
  }
  return out;
}

// Window around d_k that excludes every other member of the default sequence.
json window_around(int k) {
  const AdjustConfig cfg;
  const double d = cfg.target_distance(k);
  const double above = k > 1 ? cfg.target_distance(k - 1) : d + 0.001;
  const double below = cfg.target_distance(k + 1);
  return {{"verifier", "window"},
          {"verifier_params", {{"lo", d - 0.45 * (d - below)}, {"hi", d + 0.45 * (above - d)}}}};
}

Blueprint pivot_bowl() {
  Blueprint s;
  s.skill = "pivoting";
  s.frames = 60;
  s.camera_position = {0.0, -0.5, 0.25};
  s.camera_target = {0.0, 0.1, 0.1};
  s.plane = Plane{Eigen::Vector3d::UnitY(), -0.1};
  s.plane_center = {0.0, 0.1, 0.1};
  const Point3 bowl(0.0, 0.1, 0.03);
  std::vector<Point3> pts;
  for (const Point3& p : fibonacci_sphere(bowl, 0.08, 100000)) {
    if (p.z() >= 0.0) pts.push_back(p);
  }
  s.object = PointCloud(std::move(pts));
  const Point3 pivot(-0.09, 0.1, 0.03);
  const double radius = 0.18;
  s.pose = [=](double t) {
    const double theta = 0.5 * pi * t;
    Pose left{pivot + Point3(-0.003 * t, 0.0, 0.004 * std::sin(pi * t)),
              rot(0.05 * std::sin(pi * t), Eigen::Vector3d::UnitY()) *
                  rot(-0.5 * pi, Eigen::Vector3d::UnitZ())};
    Pose right{pivot + radius * Point3(std::cos(theta), 0.0, std::sin(theta)),
               rot(-theta, Eigen::Vector3d::UnitY()) * rot(0.5 * pi, Eigen::Vector3d::UnitZ())};
    return std::make_pair(left, right);
  };
  s.verifier = window_around(4);
  s.control_points = 8;
  s.expected_k = 4;
  return s;
}

Blueprint poke_cup() {
  Blueprint s;
  s.skill = "poking";
  s.camera_position = {0.0, -0.5, 0.3};
  s.camera_target = {0.0, 0.1, 0.08};
  s.plane = Plane{Eigen::Vector3d::UnitY(), -0.1};
  s.plane_center = {0.0, 0.1, 0.08};
  s.object = PointCloud(capsule_cloud({0.0, 0.1, 0.035}, 0.03, 0.05));
  s.pose = [](double t) {
    Pose left{Point3(-0.2, 0.1, 0.15) + Point3(0.004 * std::sin(pi * t), 0.0, -0.003 * t),
              rot(-0.5 * pi, Eigen::Vector3d::UnitZ())};
    Pose right{Point3(0.09, 0.1, 0.035) + Point3(-0.04 * t, 0.0, 0.03 * t * t),
               rot(0.3 * t, Eigen::Vector3d::UnitY()) * rot(0.5 * pi, Eigen::Vector3d::UnitZ())};
    return std::make_pair(left, right);
  };
  s.verifier = window_around(2);
  s.control_points = 6;
  s.expected_k = 2;
  return s;
}

Blueprint push_basket() {
  Blueprint s;
  s.skill = "pushing";
  s.camera_position = {0.0, -0.35, 0.5};
  s.camera_target = {0.0, 0.2, 0.06};
  s.plane = Plane{Eigen::Vector3d::UnitZ(), -0.06};
  s.plane_center = {0.0, 0.2, 0.06};
  s.object = PointCloud(basket_cloud({-0.12, 0.1, 0.0}, {0.12, 0.3, 0.12}));
  s.pose = [](double t) {
    const double y = 0.14 + 0.12 * t;
    const double wobble = 0.004 * std::sin(pi * t);
    const Rotation yaw = rot(0.1 * t, Eigen::Vector3d::UnitZ());
    Pose left{Point3(-0.13 + wobble, y, 0.06), yaw * rot(-0.5 * pi, Eigen::Vector3d::UnitZ())};
    Pose right{Point3(0.13 + wobble, y, 0.06), yaw * rot(0.5 * pi, Eigen::Vector3d::UnitZ())};
    return std::make_pair(left, right);
  };
  s.verifier = window_around(3);
  s.control_points = 6;
  s.expected_k = 3;
  return s;
}

Blueprint wrap_ball() {
  Blueprint s;
  s.skill = "wrapping";
  s.camera_position = {0.0, -0.45, 0.3};
  s.camera_target = {0.0, 0.12, 0.1};
  s.plane = Plane{Eigen::Vector3d::UnitY(), -0.12};
  s.plane_center = {0.0, 0.12, 0.1};
  s.object = PointCloud(fibonacci_sphere({0.0, 0.12, 0.07}, 0.07, 12000));
  s.pose = [](double t) {
    const Point3 lift(0.08 * t, 0.0, 0.02 * std::sin(pi * t));
    const Rotation tilt = rot(0.2 * std::sin(pi * t), Eigen::Vector3d::UnitY());
    Pose left{Point3(-0.08, 0.12, 0.07) + lift, tilt * rot(-0.5 * pi, Eigen::Vector3d::UnitZ())};
    Pose right{Point3(0.08, 0.12, 0.07) + lift, tilt * rot(0.5 * pi, Eigen::Vector3d::UnitZ())};
    return std::make_pair(left, right);
  };
  s.verifier = {{"verifier", "geometric"},
                {"verifier_params",
                 {{"loss_threshold", 0.0045},
                  {"compress_threshold", 0.005},
                  {"contact_frames", json::array({0, 0})}}}};
  s.control_points = 8;
  s.expected_k = 2;
  return s;
}

Blueprint make_blueprint(const std::string& name) {
  if (name == "pivot-bowl") return pivot_bowl();
  if (name == "poke-cup") return poke_cup();
  if (name == "push-basket") return push_basket();
  if (name == "wrap-ball") return wrap_ball();
  throw Error(ErrorKind::UnknownScenario, "unknown scenario \"" + name + "\"");
}

Eigen::Isometry3d look_at(const Point3& position, const Point3& target) {
  const Eigen::Vector3d z = (target - position).normalized();
  const Eigen::Vector3d x = z.cross(Eigen::Vector3d::UnitZ()).normalized();
  const Eigen::Vector3d y = z.cross(x);
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  pose.linear().col(0) = x;
  pose.linear().col(1) = y;
  pose.linear().col(2) = z;
  pose.translation() = position;
  return pose;
}

// Joint layout: wrist 0, thumb 1-4, index 5-8, middle 9-12, ring 13-16, pinky 17-20.
HandFrame synthesize_hand(const Pose& camera_pose, Arm arm, std::int64_t frame, double sigma,
                          std::mt19937_64& rng) {
  const Eigen::Vector3d x = camera_pose.orientation.col(0);
  const Eigen::Vector3d y = camera_pose.orientation.col(1);
  const Point3& c = camera_pose.position;
  const Point3 index_tip = c + kPinchHalfWidth * x;
  const Point3 thumb_tip = c - kPinchHalfWidth * x;
  const Point3 wrist = index_tip - kFingerLength * (y + kFingerSpread * x);
  const Point3 ring_tip = wrist + kFingerLength * (y - kFingerSpread * x);
  const Point3 middle_tip = wrist + kFingerLength * y;
  const Point3 pinky_tip = wrist + 0.8 * kFingerLength * (y - 2.0 * kFingerSpread * x);

  HandFrame out;
  out.handedness = arm;
  out.frame_index = frame;
  out.joints[0] = wrist;
  const Point3 tips[] = {thumb_tip, index_tip, middle_tip, ring_tip, pinky_tip};
  for (int f = 0; f < 5; ++f) {
    for (int j = 1; j <= 4; ++j) {
      out.joints[static_cast<std::size_t>(4 * f + j)] = wrist + (j / 4.0) * (tips[f] - wrist);
    }
  }
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (Point3& p : out.joints) p += Point3(noise(rng), noise(rng), noise(rng));
  }
  return out;
}

PointCloud render_plane(const Blueprint& blueprint, const CameraModel& camera, std::mt19937_64& rng) {
  const auto& k = camera.intrinsics;
  const Rotation r = camera.world_from_camera.linear();
  const Point3 origin = camera.world_from_camera.translation();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point3> points(static_cast<std::size_t>(kImageWidth * kImageHeight), Point3::Zero());
  std::vector<std::uint8_t> valid(points.size(), 0);
  for (int v = 0; v < kImageHeight; ++v) {
    for (int u = 0; u < kImageWidth; ++u) {
      const bool dropped = unit(rng) < kDropout;
      const Eigen::Vector3d ray_c((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
      const Eigen::Vector3d ray_w = r * ray_c;
      const double denom = blueprint.plane.normal.dot(ray_w);
      if (std::abs(denom) < 1e-9 || dropped) continue;
      const double depth = -blueprint.plane.signed_distance(origin) / denom;
      if (!(depth > 0.0)) continue;
      if ((origin + depth * ray_w - blueprint.plane_center).norm() > kPatchRadius) continue;
      const std::size_t i = static_cast<std::size_t>(v * kImageWidth + u);
      points[i] = depth * ray_c;
      valid[i] = 1;
    }
  }
  return PointCloud::organized(kImageHeight, kImageWidth, std::move(points), std::move(valid));
}

void check_pivot_arc(const BimanualTrajectory& gt) {
  const auto right = gt.positions(Arm::Right);
  const Plane plane = fit_plane(right);
  for (const Point3& p : right) {
    if (std::abs(plane.signed_distance(p)) > 1e-12) {
      throw Error(ErrorKind::PreconditionViolation, "pivot ground truth is not coplanar");
    }
  }
  const Point3 pivot = gt.left.front().position;
  const double angle = std::acos(std::clamp(
      (right.front() - pivot).normalized().dot((right.back() - pivot).normalized()), -1.0, 1.0));
  if (std::abs(angle - 0.5 * pi) > 1e-9) {
    throw Error(ErrorKind::PreconditionViolation, "pivot ground truth does not sweep 90 degrees");
  }
}

json rotation_json(const Rotation& r) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.push_back(r(i, j));
  }
  return out;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"pivot-bowl", "poke-cup", "push-basket", "wrap-ball"};
}

ScenarioData generate_scenario(const ScenarioOptions& options) {
  if (!(options.sigma >= 0.0) || !std::isfinite(options.sigma)) {
    throw Error(ErrorKind::InvalidConfig, "sigma must be finite and >= 0");
  }
  const Blueprint blueprint = make_blueprint(options.name);

  ScenarioData out;
  out.name = options.name;
  out.object = blueprint.object;
  out.demo_plane = blueprint.plane;
  out.expected_k = blueprint.expected_k;
  out.smooth.spline_control_points = blueprint.control_points;
  out.camera.intrinsics = {kFocal, kFocal, kImageWidth / 2.0, kImageHeight / 2.0};
  out.camera.world_from_camera = look_at(blueprint.camera_position, blueprint.camera_target);
  const Eigen::Isometry3d camera_from_world = out.camera.world_from_camera.inverse();

  std::mt19937_64 hand_rng = make_rng(options.seed, 1);
  std::mt19937_64 scene_rng = make_rng(options.seed, 2);

  out.hands.t_s = 0;
  out.hands.t_e = blueprint.frames - 1;
  for (int i = 0; i < blueprint.frames; ++i) {
    const auto [left, right] = blueprint.pose(static_cast<double>(i) / (blueprint.frames - 1));
    out.ground_truth.timesteps.push_back(i);
    out.ground_truth.left.push_back(left);
    out.ground_truth.right.push_back(right);
    for (Arm arm : {Arm::Left, Arm::Right}) {
      const Pose& world = arm == Arm::Left ? left : right;
      const Pose cam{camera_from_world * world.position,
                     camera_from_world.linear() * world.orientation};
      const Pixel px = project_point(cam.position, out.camera.intrinsics);
      if (px.u < 0 || px.v < 0 || px.u >= kImageWidth || px.v >= kImageHeight) {
        throw Error(ErrorKind::PreconditionViolation,
                    options.name + ": contact leaves the image", i);
      }
      const HandFrame hand = synthesize_hand(cam, arm, i, options.sigma, hand_rng);
      (arm == Arm::Left ? out.hands.left : out.hands.right).push_back(hand);
    }
  }
  if (options.name == "pivot-bowl") check_pivot_arc(out.ground_truth);
  out.scene = render_plane(blueprint, out.camera, scene_rng);

  const Rotation& r = out.camera.world_from_camera.linear();
  const Point3 t = out.camera.world_from_camera.translation();
  out.config = {
      {"skill", blueprint.skill},
      {"primary_arm", std::string(to_string(blueprint.primary))},
      {"d1", 0.005},
      {"gamma", 0.85},
      {"k_max", 10},
      {"camera",
       {{"fx", out.camera.intrinsics.fx},
        {"fy", out.camera.intrinsics.fy},
        {"cx", out.camera.intrinsics.cx},
        {"cy", out.camera.intrinsics.cy},
        {"world_from_camera", {{"R", rotation_json(r)}, {"t", json::array({t.x(), t.y(), t.z()})}}}}},
      {"joints", {{"wrist", 0}, {"thumb_tip", 4}, {"index_tip", 8}, {"ring_tip", 16}}},
      {"smooth", {{"top_n", 3}, {"control_points", blueprint.control_points}, {"smoothing_weight", 0.0}}},
      {"paths", {{"hands", "hands.json"}, {"scene", "scene.json"}, {"object", "object.ply"}, {"out", "out"}}},
  };
  out.config.update(blueprint.verifier);
  return out;
}

void write_scenario(const ScenarioData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::write_json(dir / "hands.json", io::to_json(data.hands));
  io::write_organized_json(dir / "scene.json", data.scene);
  io::write_ply(dir / "object.ply", data.object);
  io::write_json(dir / "ground_truth.json", io::to_json(data.ground_truth));
  io::write_json(dir / "expected.json", {{"scenario", data.name}, {"k_used", data.expected_k}});
  io::write_json(dir / "config.json", data.config);
}

BimanualTrajectory add_position_noise(const BimanualTrajectory& traj, double sigma,
                                      std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 3);
  std::normal_distribution<double> noise(0.0, sigma);
  BimanualTrajectory out = traj;
  for (Arm a : {Arm::Left, Arm::Right}) {
    for (Pose& p : out.arm(a)) p.position += Point3(noise(rng), noise(rng), noise(rng));
  }
  return out;
}

double position_rms(const BimanualTrajectory& a, const BimanualTrajectory& b, Arm arm) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorKind::PreconditionViolation, "trajectories differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a.arm(arm)[i].position - b.arm(arm)[i].position).squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

}  // namespace binomap
