// Copyright 2026 The Synthlight Authors
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

#include "synthlight/render/primitives.hpp"

#include <cmath>

namespace synthlight::render {
namespace {

bool degenerate(const Transform& t) {
  return std::abs(dot(cross(t.axis_x, t.axis_y), t.axis_z)) < 1e-12;
}

// Emits a triangle with its normal turned away from `center` (convex shapes).
void emit_convex(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c,
                 const Vec3& center, const Material& m) {
  Triangle t{{a, b, c}, m, true};
  const Vec3 n = face_normal(t);
  if (dot(n, n) < 1e-18) return;
  const Vec3 centroid = (a + b + c) * (1.0 / 3.0);
  if (dot(n, centroid - center) < 0.0) std::swap(t.v[1], t.v[2]);
  out.push_back(t);
}

void emit_open(std::vector<Triangle>& out, const Vec3& a, const Vec3& b, const Vec3& c,
               const Material& m) {
  Triangle t{{a, b, c}, m, false};
  const Vec3 n = face_normal(t);
  if (dot(n, n) < 1e-18) return;
  out.push_back(t);
}

void tessellate_box(const Primitive& p, std::vector<Triangle>& out) {
  const Transform& t = p.transform;
  std::array<Vec3, 8> v;
  for (int i = 0; i < 8; ++i) {
    v[i] = t.apply({(i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0});
  }
  static constexpr int kFaces[12][3] = {{0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5},
                                        {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3},
                                        {0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}};
  for (const auto& f : kFaces) emit_convex(out, v[f[0]], v[f[1]], v[f[2]], t.origin, p.material);
}

void tessellate_cylinder(const Primitive& p, std::vector<Triangle>& out, int segments,
                         bool capped, bool open_shell) {
  const Transform& t = p.transform;
  const double begin = open_shell ? p.arc_begin : 0.0;
  const double end = open_shell ? p.arc_end : 2.0 * kPi;
  const int n = std::max(1, static_cast<int>(std::ceil(segments * (end - begin) / (2.0 * kPi))));
  const Vec3 top_center = t.apply({0.0, 1.0, 0.0});
  const Vec3 bottom_center = t.apply({0.0, -1.0, 0.0});
  for (int i = 0; i < n; ++i) {
    const double a0 = begin + (end - begin) * i / n;
    const double a1 = begin + (end - begin) * (i + 1) / n;
    const Vec3 b0 = t.apply({std::cos(a0), -1.0, std::sin(a0)});
    const Vec3 b1 = t.apply({std::cos(a1), -1.0, std::sin(a1)});
    const Vec3 t0 = t.apply({std::cos(a0), 1.0, std::sin(a0)});
    const Vec3 t1 = t.apply({std::cos(a1), 1.0, std::sin(a1)});
    if (open_shell) {
      emit_open(out, b0, b1, t1, p.material);
      emit_open(out, b0, t1, t0, p.material);
    } else {
      emit_convex(out, b0, b1, t1, t.origin, p.material);
      emit_convex(out, b0, t1, t0, t.origin, p.material);
      if (capped) {
        emit_convex(out, top_center, t0, t1, t.origin, p.material);
        emit_convex(out, bottom_center, b1, b0, t.origin, p.material);
      }
    }
  }
}

void tessellate_sphere(const Primitive& p, std::vector<Triangle>& out, int segments) {
  const Transform& t = p.transform;
  const int rings = std::max(2, segments / 2);
  auto point = [&](int ring, int seg) {
    const double theta = kPi * ring / rings;  // from +y pole
    const double phi = 2.0 * kPi * seg / segments;
    return t.apply({std::sin(theta) * std::cos(phi), std::cos(theta), std::sin(theta) * std::sin(phi)});
  };
  for (int r = 0; r < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      const Vec3 a = point(r, s);
      const Vec3 b = point(r, s + 1);
      const Vec3 c = point(r + 1, s + 1);
      const Vec3 d = point(r + 1, s);
      if (r > 0) emit_convex(out, a, b, c, t.origin, p.material);
      if (r + 1 < rings) emit_convex(out, a, c, d, t.origin, p.material);
    }
  }
}

void tessellate_disc(const Primitive& p, std::vector<Triangle>& out, int segments) {
  const Transform& t = p.transform;
  for (int i = 0; i < segments; ++i) {
    const double a0 = 2.0 * kPi * i / segments;
    const double a1 = 2.0 * kPi * (i + 1) / segments;
    emit_open(out, t.origin, t.apply({std::cos(a0), 0.0, std::sin(a0)}),
              t.apply({std::cos(a1), 0.0, std::sin(a1)}), p.material);
  }
}

void tessellate_mesh(const Primitive& p, std::vector<Triangle>& out) {
  if (p.mesh == nullptr) return;
  const auto& verts = p.mesh->vertices;
  for (const auto& f : p.mesh->faces) {
    emit_open(out, p.transform.apply(verts[f[0]]), p.transform.apply(verts[f[1]]),
              p.transform.apply(verts[f[2]]), p.material);
  }
}

}  // namespace

void tessellate(const Primitive& prim, std::vector<Triangle>& out, int segments) {
  segments = std::max(3, segments);
  switch (prim.kind) {
    case PrimitiveKind::kBox:
      if (!degenerate(prim.transform)) tessellate_box(prim, out);
      break;
    case PrimitiveKind::kCylinder:
      if (!degenerate(prim.transform)) tessellate_cylinder(prim, out, segments, true, false);
      break;
    case PrimitiveKind::kCylinderSegment:
      if (!degenerate(prim.transform) && prim.arc_end > prim.arc_begin) {
        tessellate_cylinder(prim, out, segments, false, true);
      }
      break;
    case PrimitiveKind::kSphere:
      if (!degenerate(prim.transform)) tessellate_sphere(prim, out, segments);
      break;
    case PrimitiveKind::kEllipseDisc:
      tessellate_disc(prim, out, segments);
      break;
    case PrimitiveKind::kTriangleMesh:
      tessellate_mesh(prim, out);
      break;
  }
}

}  // namespace synthlight::render
