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

#pragma once

#include <array>
#include <vector>

#include "synthlight/core/common.hpp"
#include "synthlight/scenegen/vehicle_model.hpp"

namespace synthlight::render {

enum class PrimitiveKind { kBox, kCylinder, kCylinderSegment, kSphere, kEllipseDisc, kTriangleMesh };

struct Material {
  Rgb diffuse;
  bool emissive = false;
  double alpha = 1.0;
};

/// Affine placement of a unit shape. The axes carry the scale, so a local
/// point p maps to origin + axis_x*p.x + axis_y*p.y + axis_z*p.z.
struct Transform {
  Vec3 origin;
  Vec3 axis_x{1.0, 0.0, 0.0};
  Vec3 axis_y{0.0, 1.0, 0.0};
  Vec3 axis_z{0.0, 0.0, 1.0};

  Vec3 apply(const Vec3& p) const noexcept {
    return origin + axis_x * p.x + axis_y * p.y + axis_z * p.z;
  }
};

/// Unit shapes in local space:
///   box              [-1,1]^3
///   cylinder         radius 1 around local y, y in [-1,1], capped
///   cylinder_segment open shell of the cylinder for angles [arc_begin, arc_end],
///                    angle measured in the local xz plane from +x toward +z
///   sphere           radius 1
///   ellipse_disc     unit disc in the local xz plane
///   triangle_mesh    `mesh` vertices as given
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::kBox;
  Transform transform;
  Material material;
  double arc_begin = 0.0;
  double arc_end = 2.0 * kPi;
  const scenegen::TriangleMesh* mesh = nullptr;
};

struct Triangle {
  std::array<Vec3, 3> v;
  Material material;
  /// Part of a closed convex surface with outward winding; back faces of
  /// translucent closed surfaces are culled.
  bool closed = false;
};

inline constexpr int kRadialSegments = 24;

/// Appends the world-space triangles of `prim` to `out`. Degenerate shapes
/// produce no triangles.
void tessellate(const Primitive& prim, std::vector<Triangle>& out,
                int segments = kRadialSegments);

/// Geometric normal (v1-v0) x (v2-v0), not normalized.
inline Vec3 face_normal(const Triangle& t) noexcept {
  return cross(t.v[1] - t.v[0], t.v[2] - t.v[0]);
}

}  // namespace synthlight::render
