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

#include "binomap/bspline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "binomap/error.hpp"

namespace binomap {

CubicBSpline::CubicBSpline(Eigen::MatrixXd control_points)
    : control_(std::move(control_points)),
      knots_(clamped_uniform_knots(static_cast<int>(control_.rows()))) {}

std::vector<double> CubicBSpline::clamped_uniform_knots(int n) {
  if (n < kDegree + 1) {
    throw Error(ErrorKind::InvalidConfig, "cubic B-spline needs at least 4 control points");
  }
  const int spans = n - kDegree;
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(n + kDegree + 1));
  for (int i = 0; i <= kDegree; ++i) knots.push_back(0.0);
  for (int i = 1; i < spans; ++i) knots.push_back(static_cast<double>(i) / spans);
  for (int i = 0; i <= kDegree; ++i) knots.push_back(1.0);
  return knots;
}

// Cox-de Boor on the non-zero span.
Eigen::RowVectorXd CubicBSpline::basis(std::span<const double> knots, int n, double u) {
  const int p = kDegree;
  u = std::clamp(u, 0.0, 1.0);
  int span = p;
  if (u >= knots[static_cast<std::size_t>(n)]) {
    span = n - 1;
  } else {
    while (span < n - 1 && u >= knots[static_cast<std::size_t>(span + 1)]) ++span;
  }

  double left[kDegree + 1], right[kDegree + 1], values[kDegree + 1];
  values[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots[static_cast<std::size_t>(span + 1 - j)];
    right[j] = knots[static_cast<std::size_t>(span + j)] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = values[r] / (right[r + 1] + left[j - r]);
      values[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    values[j] = saved;
  }

  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  for (int j = 0; j <= p; ++j) row(span - p + j) = values[j];
  return row;
}

Eigen::VectorXd CubicBSpline::evaluate(double u) const {
  return (basis(knots_, control_count(), u) * control_).transpose();
}

CubicBSpline CubicBSpline::fit(const Eigen::MatrixXd& data, std::span<const double> params,
                               int n, double smoothing_weight) {
  const auto m = static_cast<int>(data.rows());
  const auto dim = static_cast<int>(data.cols());
  if (static_cast<int>(params.size()) != m) {
    throw Error(ErrorKind::PreconditionViolation, "one parameter per sample required");
  }
  if (n < kDegree + 1 || n > m) {
    throw Error(ErrorKind::InvalidConfig,
                "control point count must lie in [4, number of samples]");
  }
  if (smoothing_weight < 0.0) throw Error(ErrorKind::InvalidConfig, "negative smoothing weight");

  const std::vector<double> knots = clamped_uniform_knots(n);
  Eigen::MatrixXd basis_rows(m, n);
  for (int i = 0; i < m; ++i) basis_rows.row(i) = basis(knots, n, params[static_cast<std::size_t>(i)]);

  const Eigen::RowVectorXd first = data.row(0);
  const Eigen::RowVectorXd last = data.row(m - 1);
  const int free = n - 2;

  // Second differences of the full control vector, split into the pinned
  // (first/last) and free columns.
  const int diffs = n - 2;
  Eigen::MatrixXd second_diff = Eigen::MatrixXd::Zero(diffs, n);
  for (int i = 0; i < diffs; ++i) {
    second_diff(i, i) = 1.0;
    second_diff(i, i + 1) = -2.0;
    second_diff(i, i + 2) = 1.0;
  }

  const int rows = m + (smoothing_weight > 0.0 ? diffs : 0);
  Eigen::MatrixXd a(rows, free);
  Eigen::MatrixXd b(rows, dim);
  a.topRows(m) = basis_rows.middleCols(1, free);
  b.topRows(m) = data - basis_rows.col(0) * first - basis_rows.col(n - 1) * last;
  if (smoothing_weight > 0.0) {
    const double w = std::sqrt(smoothing_weight);
    a.bottomRows(diffs) = w * second_diff.middleCols(1, free);
    b.bottomRows(diffs) =
        -w * (second_diff.col(0) * first + second_diff.col(n - 1) * last);
  }

  Eigen::MatrixXd control(n, dim);
  control.row(0) = first;
  control.row(n - 1) = last;
  if (free > 0) control.middleRows(1, free) = a.colPivHouseholderQr().solve(b);
  return CubicBSpline(std::move(control));
}

std::vector<double> chord_length_parameters(const Eigen::MatrixXd& data) {
  const auto m = static_cast<std::size_t>(data.rows());
  std::vector<double> params(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    params[i] = params[i - 1] + (data.row(r) - data.row(r - 1)).norm();
  }
  const double total = m == 0 ? 0.0 : params.back();
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateInput, "trajectory has zero length");
  for (double& u : params) u /= total;
  params.back() = 1.0;
  return params;
}

}  // namespace binomap
