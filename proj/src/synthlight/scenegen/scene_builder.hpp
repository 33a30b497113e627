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
#include <span>

#include "synthlight/core/rng.hpp"
#include "synthlight/scenegen/scene.hpp"
#include "synthlight/scenegen/vehicle_model.hpp"

namespace synthlight::scenegen {

/// Vehicle occlusion rule: keep the vehicle unless its box covers half or
/// more of the area of any light box.
bool filter_vehicle(const Rect& vehicle_box, std::span<const Rect> light_boxes) noexcept;

/// Tone of a lit bulb: a random color inside the hue band of `state`.
Rgb sample_state_tone(Rng& rng, LightState state);

/// Validated configuration plus the vehicle mesh, shared read-only between
/// concurrent scene builds.
class SceneBuilder {
 public:
  explicit SceneBuilder(SceneConfig cfg);

  /// Pure function of (seed, config).
  SceneGraph build(std::uint64_t seed) const;

  const SceneConfig& config() const noexcept { return cfg_; }
  const TriangleMesh& vehicle_mesh() const noexcept { return vehicle_mesh_; }

 private:
  SceneConfig cfg_;
  TriangleMesh vehicle_mesh_;
};

SceneGraph build_scene(std::uint64_t seed, const SceneConfig& cfg);

}  // namespace synthlight::scenegen
