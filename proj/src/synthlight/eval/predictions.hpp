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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synthlight/datasets/manifest.hpp"
#include "synthlight/eval/metrics.hpp"

namespace synthlight::eval {

/// One JSON object per line:
///   {"image": str, "state": str, "confidence": float,
///    "xmin": float, "ymin": float, "xmax": float, "ymax": float}
/// Blank lines are skipped. Any other malformed line throws ParseError with
/// its 1-based line number.
std::vector<Detection> parse_predictions(std::string_view text);
std::vector<Detection> load_predictions(const std::filesystem::path& path);

std::string predictions_to_jsonl(std::span<const Detection> detections);

std::vector<GroundTruth> ground_truths(const datasets::DatasetManifest& manifest);

}  // namespace synthlight::eval
