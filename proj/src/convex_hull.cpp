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

#include "binomap/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "binomap/error.hpp"
#include "binomap/kernels.hpp"

namespace binomap {

namespace {

struct Face {
  std::array<std::size_t, 3> v;
  Plane plane;
  std::vector<std::size_t> outside;
  bool alive = true;
};

Plane plane_through(const Point3& a, const Point3& b, const Point3& c) {
  Eigen::Vector3d n = (b - a).cross(c - a);
  n.normalize();
  return Plane{n, -n.dot(a)};
}

using Edge = std::pair<std::size_t, std::size_t>;

}  // namespace

// Quickhull: faces keep the points lying above them; each step lifts the
// farthest such point, so interior and on-surface grid points never enter.
ConvexHull::ConvexHull(std::span<const Point3> pts) {
  if (pts.size() < 4) throw Error(ErrorKind::DegenerateInput, "convex hull needs >= 4 points");

  Eigen::Vector3d lo = pts[0], hi = pts[0];
  for (const Point3& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double scale = (hi - lo).norm();
  if (!(scale > 0.0)) throw Error(ErrorKind::DegenerateInput, "convex hull of coincident points");
  tolerance_ = 1e-10 * scale;

  std::size_t i0 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x() < pts[i0].x()) i0 = i;
  }
  const std::size_t i1 = kernels::serial::farthest(pts, pts[i0]).index;
  const Eigen::Vector3d dir = (pts[i1] - pts[i0]).normalized();
  std::size_t i2 = i0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = (pts[i] - pts[i0]).cross(dir).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= tolerance_) throw Error(ErrorKind::DegenerateInput, "hull input is collinear");
  const Plane base = plane_through(pts[i0], pts[i1], pts[i2]);
  std::size_t i3 = i0;
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = std::abs(base.signed_distance(pts[i]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= tolerance_) throw Error(ErrorKind::DegenerateInput, "hull input is coplanar");

  const Point3 interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<Face> faces;
  std::map<Edge, std::size_t> edge_owner;  // directed edge -> face id

  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t id = faces.size();
    faces.push_back(Face{{a, b, c}, plane_through(pts[a], pts[b], pts[c]), {}});
    edge_owner[{a, b}] = id;
    edge_owner[{b, c}] = id;
    edge_owner[{c, a}] = id;
    return id;
  };
  auto add_oriented = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (plane_through(pts[a], pts[b], pts[c]).signed_distance(interior) > 0.0) std::swap(b, c);
    add_face(a, b, c);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  auto assign = [&](std::size_t p, std::size_t first_face) {
    for (std::size_t f = first_face; f < faces.size(); ++f) {
      if (faces[f].alive && faces[f].plane.signed_distance(pts[p]) > tolerance_) {
        faces[f].outside.push_back(p);
        return;
      }
    }
  };
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (p != i0 && p != i1 && p != i2 && p != i3) assign(p, 0);
  }

  std::size_t cursor = 0;
  std::vector<std::size_t> visible;
  std::vector<Edge> horizon;
  std::vector<std::size_t> orphans;
  while (true) {
    while (cursor < faces.size() && (!faces[cursor].alive || faces[cursor].outside.empty())) {
      ++cursor;
    }
    if (cursor == faces.size()) break;

    const Face& source = faces[cursor];
    std::size_t eye = source.outside.front();
    double far = source.plane.signed_distance(pts[eye]);
    for (std::size_t q : source.outside) {
      const double d = source.plane.signed_distance(pts[q]);
      if (d > far) {
        far = d;
        eye = q;
      }
    }

    // Visible faces form a connected patch around the source face.
    visible.assign(1, cursor);
    faces[cursor].alive = false;
    for (std::size_t next = 0; next < visible.size(); ++next) {
      const auto v = faces[visible[next]].v;
      for (int e = 0; e < 3; ++e) {
        const auto twin = edge_owner.find({v[(e + 1) % 3], v[e]});
        if (twin == edge_owner.end()) continue;
        Face& g = faces[twin->second];
        if (g.alive && g.plane.signed_distance(pts[eye]) > tolerance_) {
          g.alive = false;
          visible.push_back(twin->second);
        }
      }
    }

    horizon.clear();
    orphans.clear();
    for (std::size_t f : visible) {
      const auto v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const Edge edge{v[e], v[(e + 1) % 3]};
        const auto twin = edge_owner.find({edge.second, edge.first});
        if (twin != edge_owner.end() && faces[twin->second].alive) horizon.push_back(edge);
      }
      for (std::size_t q : faces[f].outside) {
        if (q != eye) orphans.push_back(q);
      }
      faces[f].outside.clear();
      faces[f].outside.shrink_to_fit();
    }
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_owner.find({v[e], v[(e + 1) % 3]});
        if (it != edge_owner.end() && it->second == f) edge_owner.erase(it);
      }
    }

    const std::size_t first_new = faces.size();
    for (const Edge& e : horizon) add_face(e.first, e.second, eye);
    std::sort(orphans.begin(), orphans.end());
    for (std::size_t q : orphans) assign(q, first_new);
    cursor = std::min(cursor, first_new);
  }

  for (const Face& f : faces) {
    if (!f.alive || !f.plane.normal.allFinite()) continue;
    planes_.push_back(f.plane);
    triangles_.push_back(f.v);
  }
}

double ConvexHull::depth(const Point3& p) const {
  return -kernels::max_halfspace_value(planes_, p);
}

}  // namespace binomap
