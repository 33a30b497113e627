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
#include <optional>

#include "synthlight/core/image.hpp"
#include "synthlight/core/rng.hpp"
#include "synthlight/render/projection.hpp"
#include "synthlight/scenegen/scene.hpp"

namespace synthlight::datasets {

enum class TemplateVariant { kFullBulb, kTimer, kArrow };

struct TemplateSpec {
  TemplateVariant variant = TemplateVariant::kFullBulb;
  LightState state = LightState::kRed;
  Rgb tone{255, 0, 0};
  bool arrow_left = false;
  std::array<bool, scenegen::kTimerSegments> timer_mask{};
  double rotation_degrees = 0.0;  // drawn from [-3.6, 3.6]
  // Relative height loss of the far side per unit of normalized offset from
  // the image center (offset 1 = image border).
  double shrink = 0.0;
};

inline constexpr double kMaxTemplateRotationDegrees = 3.6;
inline constexpr double kDefaultTemplateShrink = 0.25;

TemplateSpec sample_template_spec(Rng& rng, LightState state);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Destination corners (top-left, top-right, bottom-right, bottom-left) of the
/// warped template for `label` in an image of `size`. The side farther from
/// the image center is shortened by shrink * |offset|, the quad is rotated,
/// and the result is stretched so its bounding box equals the label box.
std::array<Point2, 4> template_quad(const TemplateSpec& spec, const Rect& label, render::ImageSize size);

/// Color of the flat pictogram at face coordinates (u, v) in [0,1]^2, u to
/// the right and v downward, laid out like the front face of the 3D model.
Rgb template_color(const TemplateSpec& spec, double u, double v,
                   const scenegen::TrafficLightDims& dims = {});

/// Draws the warped template into an RGBA canvas, opaque where covered.
void render_template(const TemplateSpec& spec, const Rect& label, Image& canvas,
                     const scenegen::TrafficLightDims& dims = {});

}  // namespace synthlight::datasets
