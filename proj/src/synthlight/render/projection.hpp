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

#include <span>

#include "synthlight/core/common.hpp"
#include "synthlight/scenegen/scene.hpp"

namespace synthlight::render {

struct ImageSize {
  int width = 640;
  int height = 480;
};

struct Pixel {
  double x = 0.0;
  double y = 0.0;
};

/// Pinhole camera looking from `position` toward `look_at` with world +y as
/// the up reference. Camera space: x right, y up, z along the optical axis.
/// Image space: origin at the top-left corner, y pointing down.
class PinholeCamera {
 public:
  PinholeCamera(const scenegen::CameraSpec& spec, ImageSize size);

  Vec3 to_camera(const Vec3& world) const noexcept;

  /// Projects a camera-space point with z > 0.
  Pixel project_camera(const Vec3& cam) const noexcept {
    return {cx_ + focal_ * cam.x / cam.z, cy_ - focal_ * cam.y / cam.z};
  }

  /// Throws Error(kBehindCamera) when the depth is not positive.
  Pixel project(const Vec3& world) const;

  const Vec3& position() const noexcept { return position_; }
  double focal() const noexcept { return focal_; }
  ImageSize size() const noexcept { return size_; }

 private:
  Vec3 position_;
  Vec3 right_;
  Vec3 up_;
  Vec3 forward_;
  double focal_;
  double cx_;
  double cy_;
  ImageSize size_;
};

Pixel project(const Vec3& point, const scenegen::CameraSpec& camera, ImageSize size);

/// Axis-aligned hull of the projections of the corners in front of the camera.
/// Throws Error(kBehindCamera) when every corner is behind it.
Rect project_bbox3d(std::span<const Vec3> corners, const scenegen::CameraSpec& camera,
                    ImageSize size);

}  // namespace synthlight::render
