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

#include "synthlight/render/projection.hpp"

#include <cmath>
#include <limits>

namespace synthlight::render {

PinholeCamera::PinholeCamera(const scenegen::CameraSpec& spec, ImageSize size)
    : position_(spec.position), size_(size) {
  forward_ = normalized(spec.look_at - spec.position);
  Vec3 world_up{0.0, 1.0, 0.0};
  if (std::abs(dot(forward_, world_up)) > 0.999999) world_up = {0.0, 0.0, 1.0};
  right_ = normalized(cross(world_up, forward_));
  up_ = cross(forward_, right_);
  focal_ = 0.5 * size.height / std::tan(0.5 * deg_to_rad(spec.vfov_degrees));
  cx_ = 0.5 * size.width;
  cy_ = 0.5 * size.height;
}

Vec3 PinholeCamera::to_camera(const Vec3& world) const noexcept {
  const Vec3 d = world - position_;
  return {dot(d, right_), dot(d, up_), dot(d, forward_)};
}

Pixel PinholeCamera::project(const Vec3& world) const {
  const Vec3 c = to_camera(world);
  if (!(c.z > 0.0)) throw Error(ErrorCode::kBehindCamera, "point is behind the camera");
  return project_camera(c);
}

Pixel project(const Vec3& point, const scenegen::CameraSpec& camera, ImageSize size) {
  return PinholeCamera(camera, size).project(point);
}

Rect project_bbox3d(std::span<const Vec3> corners, const scenegen::CameraSpec& camera,
                    ImageSize size) {
  const PinholeCamera cam(camera, size);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Rect r{kInf, kInf, -kInf, -kInf};
  bool any = false;
  for (const Vec3& p : corners) {
    const Vec3 c = cam.to_camera(p);
    if (!(c.z > 0.0)) continue;
    const Pixel px = cam.project_camera(c);
    r = {std::min(r.x_min, px.x), std::min(r.y_min, px.y), std::max(r.x_max, px.x),
         std::max(r.y_max, px.y)};
    any = true;
  }
  if (!any) throw Error(ErrorCode::kBehindCamera, "bounding box is entirely behind the camera");
  return r;
}

}  // namespace synthlight::render
