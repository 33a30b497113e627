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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synthlight/core/common.hpp"

namespace synthlight::datasets {

enum class DatasetMode { kFullyContextualized, kUncontextualized, kTemplatesOnly, kExternal };

std::string_view to_string(DatasetMode m) noexcept;
std::optional<DatasetMode> parse_mode(std::string_view s) noexcept;

/// Integer pixel box as stored in manifests.
struct AnnotationBox {
  LightState state = LightState::kRed;
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  long area() const noexcept { return static_cast<long>(x_max - x_min) * (y_max - y_min); }
  Rect rect() const noexcept { return {double(x_min), double(y_min), double(x_max), double(y_max)}; }
  bool operator==(const AnnotationBox&) const = default;
};

struct AnnotationRecord {
  std::string image;
  int width = 0;
  int height = 0;
  std::vector<AnnotationBox> boxes;

  bool operator==(const AnnotationRecord&) const = default;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  DatasetMode mode = DatasetMode::kFullyContextualized;
  StateCounts counts{};
  std::string generator_version;  // omitted from JSON when empty
  std::vector<AnnotationRecord> records;
};

/// Rounds a continuous label half-up to integer pixels and clamps it to the
/// image. Returns nullopt when the rounded box is empty.
std::optional<AnnotationBox> round_box(const LabeledBox& label, int width, int height);

StateCounts recount(std::span<const AnnotationRecord> records) noexcept;

/// Manifest over `records` with counts recomputed.
DatasetManifest make_manifest(std::vector<AnnotationRecord> records, std::uint64_t seed,
                              DatasetMode mode);

/// Canonical text: two-space indented JSON with a trailing newline.
std::string serialize_manifest(const DatasetManifest& manifest);

/// Parses and validates a manifest. Box coordinates must satisfy
/// 0 <= min < max <= size. Counts are taken as written; see recount().
DatasetManifest parse_manifest(std::string_view text);

DatasetManifest load_manifest(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

/// Writes `text` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

/// Labeled box with a free-form source label, as found in external datasets.
struct SourceBox {
  std::string label;
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;
};

struct SourceRecord {
  std::string image;
  int width = 0;
  int height = 0;
  std::vector<SourceBox> boxes;
};

/// Reads records in the manifest layout whose "state" fields may hold any
/// string (e.g. "stopLeft"). Metadata, if present, is ignored.
std::vector<SourceRecord> parse_source_records(std::string_view text);

}  // namespace synthlight::datasets
