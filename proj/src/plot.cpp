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

#include "binomap/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "binomap/error.hpp"

namespace binomap {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct ArmStats {
  std::optional<Plane> plane;
  std::vector<double> residuals;
  std::optional<SmoothedPositions> smoothed;
};

ArmStats arm_stats(const std::vector<Point3>& pts, const SmoothConfig& cfg) {
  ArmStats s;
  try {
    s.plane = fit_plane(pts);
    for (const Point3& p : pts) s.residuals.push_back(std::abs(s.plane->signed_distance(p)));
  } catch (const Error&) {
  }
  try {
    s.smoothed = smooth_positions(pts, cfg);
  } catch (const Error&) {
  }
  return s;
}

json summary(const std::vector<double>& v, const char* prefix) {
  if (v.empty()) return {{std::string(prefix) + "_max", nullptr}, {std::string(prefix) + "_mean", nullptr}};
  double sum = 0.0;
  for (double x : v) sum += x;
  return {{std::string(prefix) + "_max", *std::max_element(v.begin(), v.end())},
          {std::string(prefix) + "_mean", sum / static_cast<double>(v.size())}};
}

class Svg {
 public:
  Svg(int w, int h) : w_(w), h_(h) {}
  void line(double x0, double y0, double x1, double y1, const char* color) {
    body_ << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1)
          << "\" y2=\"" << num(y1) << "\" stroke=\"" << color << "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, bool dashed) {
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
          << (dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
    for (const auto& [x, y] : pts) body_ << num(x) << ',' << num(y) << ' ';
    body_ << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const char* color) {
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
          << "\" height=\"" << num(h) << "\" fill=\"" << color << "\"/>\n";
  }
  void text(double x, double y, const std::string& s) {
    body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << s << "</text>\n";
  }
  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
        << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  int w_, h_;
  std::ostringstream body_;
};

const char* arm_color(Arm a) { return a == Arm::Left ? "#1f77b4" : "#d62728"; }

std::string trajectory_svg(const BimanualTrajectory& traj, const ArmStats stats[2]) {
  constexpr int kPanel = 240;
  constexpr int kMargin = 20;
  Svg svg(3 * kPanel + 4 * kMargin, kPanel + 2 * kMargin + 10);
  const int axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const char* names[3] = {"x-y", "x-z", "y-z"};

  std::vector<Point3> all;
  for (Arm a : {Arm::Left, Arm::Right}) {
    for (const Point3& p : traj.positions(a)) all.push_back(p);
  }
  for (int panel = 0; panel < 3; ++panel) {
    const int i = axes[panel][0], j = axes[panel][1];
    double lo_i = all[0][i], hi_i = all[0][i], lo_j = all[0][j], hi_j = all[0][j];
    for (const Point3& p : all) {
      lo_i = std::min(lo_i, p[i]), hi_i = std::max(hi_i, p[i]);
      lo_j = std::min(lo_j, p[j]), hi_j = std::max(hi_j, p[j]);
    }
    const double span = std::max({hi_i - lo_i, hi_j - lo_j, 1e-6});
    const double x0 = kMargin + panel * (kPanel + kMargin);
    const double y0 = kMargin + 10;
    auto map = [&](const Point3& p) {
      return std::make_pair(x0 + (p[i] - lo_i) / span * kPanel, y0 + kPanel - (p[j] - lo_j) / span * kPanel);
    };
    svg.text(x0, kMargin, names[panel]);
    svg.line(x0, y0 + kPanel, x0 + kPanel, y0 + kPanel, "#999");
    svg.line(x0, y0, x0, y0 + kPanel, "#999");
    for (Arm a : {Arm::Left, Arm::Right}) {
      std::vector<std::pair<double, double>> raw;
      for (const Point3& p : traj.positions(a)) raw.push_back(map(p));
      svg.polyline(raw, arm_color(a), false);
      const ArmStats& s = stats[a == Arm::Left ? 0 : 1];
      if (s.smoothed) {
        std::vector<std::pair<double, double>> sm;
        for (const Point3& p : s.smoothed->smoothed) sm.push_back(map(p));
        svg.polyline(sm, "#2ca02c", true);
      }
    }
  }
  return svg.str();
}

std::string residual_svg(const ArmStats stats[2]) {
  constexpr int kBins = 10;
  Svg svg(420, 220);
  double hi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (double r : stats[a].residuals) hi = std::max(hi, r);
  }
  hi = std::max(hi, 1e-12);
  svg.text(10, 15, "|plane distance| histogram, max " + num(hi * 1e3) + " mm");
  for (int a = 0; a < 2; ++a) {
    int counts[kBins] = {};
    for (double r : stats[a].residuals) {
      ++counts[std::min(kBins - 1, static_cast<int>(r / hi * kBins))];
    }
    int peak = 1;
    for (int c : counts) peak = std::max(peak, c);
    for (int b = 0; b < kBins; ++b) {
      const double h = 160.0 * counts[b] / peak;
      svg.rect(20 + b * 40 + a * 18, 200 - h, 16, h, arm_color(a == 0 ? Arm::Left : Arm::Right));
    }
  }
  return svg.str();
}

std::string d_sequence_svg(const std::vector<AdjustAttempt>& attempts) {
  Svg svg(40 + 36 * static_cast<int>(attempts.size()), 220);
  double hi = 1e-12;
  for (const auto& a : attempts) hi = std::max(hi, a.d);
  svg.text(10, 15, "d_k (mm) per attempt");
  for (std::size_t i = 0; i < attempts.size(); ++i) {
    const double h = 160.0 * attempts[i].d / hi;
    const double x = 20 + 36.0 * static_cast<double>(i);
    svg.rect(x, 200 - h, 28, h, attempts[i].result.success() ? "#2ca02c" : "#7f7f7f");
    svg.text(x, 195 - h, num(attempts[i].d * 1e3));
  }
  return svg.str();
}

}  // namespace

PlotOutput make_plots(const PlotInput& input) {
  input.trajectory.validate();
  if (input.trajectory.empty()) throw Error(ErrorKind::DegenerateInput, "empty trajectory");
  input.smooth.validate();

  ArmStats stats[2] = {arm_stats(input.trajectory.positions(Arm::Left), input.smooth),
                       arm_stats(input.trajectory.positions(Arm::Right), input.smooth)};
  PlotOutput out;
  out.stats = json::object();
  out.stats["frames"] = input.trajectory.size();
  for (Arm a : {Arm::Left, Arm::Right}) {
    const ArmStats& s = stats[a == Arm::Left ? 0 : 1];
    json arm = summary(s.residuals, "plane_residual");
    arm.update(summary(s.smoothed ? s.smoothed->deviations : std::vector<double>{}, "deviation"));
    if (s.plane) {
      arm["plane"] = {{"normal", {s.plane->normal.x(), s.plane->normal.y(), s.plane->normal.z()}},
                      {"offset", s.plane->offset}};
    } else {
      arm["plane"] = nullptr;
    }
    out.stats[std::string(to_string(a))] = std::move(arm);
  }
  json k_used = nullptr;
  json d_sequence = json::array();
  for (const AdjustAttempt& a : input.attempts) {
    d_sequence.push_back(a.d);
    if (a.result.success() && k_used.is_null()) k_used = a.k;
  }
  out.stats["k_used"] = k_used;
  out.stats["d_sequence"] = d_sequence;

  out.svgs["trajectory.svg"] = trajectory_svg(input.trajectory, stats);
  out.svgs["residuals.svg"] = residual_svg(stats);
  if (!input.attempts.empty()) out.svgs["d_sequence.svg"] = d_sequence_svg(input.attempts);
  return out;
}

}  // namespace binomap
