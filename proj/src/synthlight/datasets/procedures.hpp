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
#include <cstddef>
#include <map>
#include <string>

#include "synthlight/datasets/manifest.hpp"

namespace synthlight::datasets {

/// Y: at least one yellow. R: at least one red, no yellow. G: at least one
/// green, neither yellow nor red. Records without lights belong to none.
enum class BalanceSubset { kYellow = 0, kRed = 1, kGreen = 2 };

std::optional<BalanceSubset> balance_subset(const AnnotationRecord& record) noexcept;

struct RebalanceResult {
  DatasetManifest manifest;
  std::array<std::size_t, 3> subset_sizes{};  // Y, R, G
  std::array<std::size_t, 3> draws{};         // Y, R, G
};

/// Emits one record from Y, then R, then G, cycling through each subset in
/// its original order, until `target_count` records exist. Throws
/// kEmptySubset when any subset is empty and target_count > 0.
RebalanceResult rebalance_by_state(const DatasetManifest& manifest, std::size_t target_count);

enum class OverlapMode { kSmallest, kLargest };

/// Groups boxes into clusters linked by positive-area overlap (transitively)
/// and keeps one box per cluster: the smallest or largest by area, earliest
/// on ties. Kept boxes stay in their original order.
AnnotationRecord resolve_overlaps(const AnnotationRecord& record, OverlapMode mode);

using LabelMap = std::map<std::string, LightState, std::less<>>;

/// stop/stopLeft -> red, go/goLeft -> green, warning/warningLeft -> yellow.
const LabelMap& lisa_label_map();

/// Maps every source label through `map`; unmapped boxes are dropped and
/// counted in `dropped`.
AnnotationRecord remap_labels(const SourceRecord& record, const LabelMap& map, std::size_t& dropped);

}  // namespace synthlight::datasets
