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

#include <filesystem>

#include <json.hpp>

#include "synthlight/scenegen/scene.hpp"

namespace synthlight::scenegen {

/// Overlays the keys present in `j` on top of the defaults. Unknown keys are
/// rejected so that typos surface as config errors.
SceneConfig scene_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SceneConfig& cfg);

SceneConfig load_scene_config(const std::filesystem::path& path);

/// Debug dump of a sampled scene.
nlohmann::ordered_json to_json(const SceneGraph& scene);

}  // namespace synthlight::scenegen
