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

#include "synthlight/core/image.hpp"
#include "synthlight/render/primitives.hpp"
#include "synthlight/render/projection.hpp"

namespace synthlight::render {

struct ShadingOptions {
  double ambient = 0.25;
  double near_plane = 1.0;  // camera-space depth below which geometry is clipped
};

/// Z-buffered rasterization into an RGBA image with a transparent background.
///
/// Opaque triangles are drawn first with depth writes. Non-emissive
/// materials get Lambert shading from `sun_direction` (the direction the light
/// travels) on top of the ambient term; emissive ones keep their color.
/// Translucent triangles are then blended back to front against the opaque
/// depth buffer without writing depth.
Image rasterize(std::span<const Triangle> triangles, const scenegen::CameraSpec& camera,
                const Vec3& sun_direction, ImageSize size, const ShadingOptions& opts = {});

Image rasterize(std::span<const Primitive> primitives, const scenegen::CameraSpec& camera,
                const Vec3& sun_direction, ImageSize size, const ShadingOptions& opts = {});

}  // namespace synthlight::render
