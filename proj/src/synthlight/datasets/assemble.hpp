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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "synthlight/datasets/manifest.hpp"
#include "synthlight/render/scene_render.hpp"

namespace synthlight::datasets {

// Salts separating the random streams that share a (seed, index) pair.
inline constexpr std::uint64_t kSceneSalt = 1;
inline constexpr std::uint64_t kPairSalt = 2;
inline constexpr std::uint64_t kComposeSalt = 3;
inline constexpr std::uint64_t kTemplateSalt = 4;
inline constexpr std::uint64_t kValidationSalt = 5;

/// Labels stored next to each foreground image.
struct ForegroundLabels {
  std::uint64_t seed = 0;  // scene seed
  std::size_t index = 0;
  int width = 0;
  int height = 0;
  std::vector<LabeledBox> labels;
};

std::string foreground_labels_to_json(const ForegroundLabels& fl);
ForegroundLabels parse_foreground_labels(std::string_view text);

struct ForegroundEntry {
  std::filesystem::path image;
  std::filesystem::path labels;
};

/// Sorted PNG files of `dir` that have a sibling .json label file.
std::vector<ForegroundEntry> list_foregrounds(const std::filesystem::path& dir);

struct ForegroundOptions {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  render::ForegroundContent content = render::ForegroundContent::kFullScene;
  int jobs = 0;
  bool dump_scenes = false;  // also write fg_NNNNNN.scene.json
};

/// Renders fg_NNNNNN.png + fg_NNNNNN.json for indices [0, count). The scene of
/// index i uses derive_seed(seed, i, kSceneSalt).
void generate_foregrounds(const scenegen::SceneBuilder& builder, const ForegroundOptions& opts,
                          const std::filesystem::path& out_dir);

/// Templates Only foregrounds: the label layout of the 3D scene for the same
/// index, with each light drawn as a 2D template.
void generate_template_foregrounds(const scenegen::SceneBuilder& builder, const ForegroundOptions& opts,
                                   const std::filesystem::path& out_dir);

enum class Pairing { kTraining, kValidation };

/// (foreground, background) index per output sample. Training draws both
/// uniformly with replacement from a per-index stream. Validation uses
/// backgrounds 0..count-1 in order, each with a distinct foreground from a
/// seeded permutation; throws kInsufficientForegrounds if the pools are too
/// small.
std::vector<std::pair<std::size_t, std::size_t>> plan_pairs(std::size_t foregrounds,
                                                            std::size_t backgrounds,
                                                            std::size_t count, std::uint64_t seed,
                                                            Pairing pairing);

struct AssembleOptions {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  Pairing pairing = Pairing::kTraining;
  DatasetMode mode = DatasetMode::kFullyContextualized;
  std::string extension = ".jpg";
  int jobs = 0;
};

/// Composes every planned pair into out_dir/img_NNNNNN<ext> and returns the
/// manifest; the caller decides where and when to write it.
DatasetManifest assemble(const std::vector<ForegroundEntry>& foregrounds,
                         const std::vector<std::filesystem::path>& backgrounds,
                         const AssembleOptions& opts, const std::filesystem::path& out_dir);

}  // namespace synthlight::datasets
