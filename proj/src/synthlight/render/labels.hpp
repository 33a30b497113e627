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

#include <optional>
#include <vector>

#include "synthlight/render/projection.hpp"
#include "synthlight/scenegen/scene.hpp"

namespace synthlight::render {

/// Unclipped hull of the projected front-face corners, or nullopt when any
/// corner is not in front of the camera.
std::optional<Rect> project_light_face(const scenegen::TrafficLightSpec& light,
                                       const scenegen::TrafficLightDims& dims,
                                       const scenegen::CameraSpec& camera, ImageSize size);

/// Share of `box` lying inside [0,w]x[0,h]. Zero for an empty box.
double fraction_inside(const Rect& box, ImageSize size) noexcept;

/// Labels for the lights associated with the south stretch. A light whose
/// unclipped box has half or more of its area outside the image is dropped;
/// kept boxes are clipped to the image.
std::vector<LabeledBox> label_lights(const scenegen::SceneGraph& scene,
                                     const scenegen::CameraSpec& camera,
                                     const scenegen::TrafficLightDims& dims);

}  // namespace synthlight::render
