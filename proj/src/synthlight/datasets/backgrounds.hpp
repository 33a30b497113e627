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
#include <string>
#include <string_view>
#include <vector>

#include "synthlight/core/image.hpp"
#include "synthlight/datasets/manifest.hpp"

namespace synthlight::datasets {

inline constexpr int kBackgroundWidth = 640;
inline constexpr int kBackgroundHeight = 480;
inline constexpr int kMinBackgroundDimension = 120;

enum class BackgroundPolarity { kNonTraffic, kTrafficPositive, kTrafficNegative };

std::string_view to_string(BackgroundPolarity p) noexcept;

struct BackgroundEntry {
  std::filesystem::path path;
  int width = 0;   // 0 when unknown until the image is decoded
  int height = 0;
  std::vector<std::string> tags;  // sorted, unique
  std::size_t light_count = 0;
};

struct BackgroundPool {
  BackgroundPolarity polarity = BackgroundPolarity::kNonTraffic;
  std::vector<BackgroundEntry> entries;
};

/// Default categories that disqualify a background.
const std::vector<std::string>& default_filter_tags();

/// Reads a COCO-style detection index (images, annotations, categories).
/// Paths are resolved against `image_root`; "traffic light" annotations are
/// counted into light_count.
std::vector<BackgroundEntry> read_coco_index(const std::filesystem::path& index_path,
                                             const std::filesystem::path& image_root);
std::vector<BackgroundEntry> parse_coco_index(std::string_view text,
                                              const std::filesystem::path& image_root);

bool has_filtered_tag(const BackgroundEntry& entry, const std::vector<std::string>& filter_tags);

/// Scales by max(640/w, 480/h) keeping the aspect ratio, then crops the
/// central 640x480 pixels.
Image fit_and_crop(const Image& image, int width = kBackgroundWidth, int height = kBackgroundHeight);

struct PrepareReport {
  BackgroundPool pool;             // the written images
  std::size_t excluded_tagged = 0;
  std::size_t excluded_small = 0;
  std::vector<std::string> unreadable;
};

/// Filters `entries`, crops the survivors, and writes them to `out_dir` as
/// bg_NNNNNN<extension> in input order.
PrepareReport prepare_backgrounds(const std::vector<BackgroundEntry>& entries,
                                  const std::vector<std::string>& filter_tags,
                                  const std::filesystem::path& out_dir,
                                  std::string_view extension = ".jpg", int jobs = 0);

/// Positive: records with at least one box. Negative: records with none.
std::pair<BackgroundPool, BackgroundPool> split_pos_neg(const DatasetManifest& annotated,
                                                        const std::filesystem::path& image_root = {});

/// Sorted .png/.jpg/.jpeg files of a directory.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

std::string pool_to_json(const BackgroundPool& pool);

}  // namespace synthlight::datasets
