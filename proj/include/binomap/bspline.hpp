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

#include <span>
#include <vector>

#include <Eigen/Core>

namespace binomap {

/// Clamped cubic B-spline on [0, 1] with uniform interior knots. Control
/// points are rows of an (n x dim) matrix.
class CubicBSpline {
 public:
  static constexpr int kDegree = 3;

  CubicBSpline(Eigen::MatrixXd control_points);

  /// Least-squares fit to samples (rows of `data`) at parameters `params`
  /// (ascending, first 0 and last 1). The first and last control points are
  /// pinned to the first and last samples, so the curve interpolates the
  /// endpoints. `smoothing_weight` adds lambda * sum |c_{i+1} - 2c_i + c_{i-1}|^2.
  static CubicBSpline fit(const Eigen::MatrixXd& data, std::span<const double> params,
                          int control_points, double smoothing_weight);

  Eigen::VectorXd evaluate(double u) const;

  int control_count() const { return static_cast<int>(control_.rows()); }
  const Eigen::MatrixXd& control_points() const { return control_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Values of all n basis functions at u.
  static Eigen::RowVectorXd basis(std::span<const double> knots, int control_points, double u);
  static std::vector<double> clamped_uniform_knots(int control_points);

 private:
  Eigen::MatrixXd control_;
  std::vector<double> knots_;
};

/// Cumulative chord length normalized to [0, 1]. Throws DegenerateInput if
/// the total length is zero.
std::vector<double> chord_length_parameters(const Eigen::MatrixXd& data);

}  // namespace binomap
