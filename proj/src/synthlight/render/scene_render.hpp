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

#include <cstdint>
#include <vector>

#include "synthlight/core/image.hpp"
#include "synthlight/render/primitives.hpp"
#include "synthlight/render/rasterizer.hpp"
#include "synthlight/scenegen/scene_builder.hpp"

namespace synthlight::render {

/// What a foreground shows. kLightsOnly draws the traffic lights without the
/// road, poles, or vehicles; labels are identical in both modes.
enum class ForegroundContent { kFullScene, kLightsOnly };

struct ForegroundRender {
  Image pixels;  // RGBA, alpha 0 where nothing was drawn
  std::vector<LabeledBox> labels;
  std::uint64_t scene_seed = 0;
};

/// Material palette shared by the scene primitives.
namespace palette {
inline constexpr Rgb kRoad{88, 88, 92};
inline constexpr Rgb kMarking{225, 225, 220};
inline constexpr Rgb kCenterLine{220, 185, 40};
inline constexpr Rgb kPole{105, 108, 112};
inline constexpr Rgb kLightBody{26, 26, 28};
inline constexpr Rgb kBulbOff{48, 48, 50};
inline constexpr Rgb kBulbShell{36, 36, 38};
inline constexpr Rgb kSegmentOff{22, 22, 22};
inline constexpr Rgb kShadow{24, 24, 26};
inline constexpr Rgb kTailShell{190, 20, 20};
inline constexpr Rgb kTailCore{255, 210, 40};
inline constexpr double kShellAlpha = 0.35;
inline constexpr double kTailShellAlpha = 0.5;
}  // namespace palette

/// Primitives of one traffic light (body, bulbs, visors, timer or arrow).
void append_light_primitives(const scenegen::TrafficLightSpec& light,
                             const scenegen::TrafficLightDims& dims, std::vector<Primitive>& out);

std::vector<Primitive> build_primitives(const scenegen::SceneGraph& scene,
                                        const scenegen::SceneConfig& cfg,
                                        const scenegen::TriangleMesh& vehicle_mesh,
                                        ForegroundContent content = ForegroundContent::kFullScene);

/// Rasterized pixels plus the south-stretch labels of `scene`.
ForegroundRender render_foreground(const scenegen::SceneGraph& scene,
                                   const scenegen::SceneBuilder& builder,
                                   ForegroundContent content = ForegroundContent::kFullScene);

}  // namespace synthlight::render
