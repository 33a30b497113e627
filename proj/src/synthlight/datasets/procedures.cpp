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

#include "synthlight/datasets/procedures.hpp"

#include <numeric>
#include <vector>

namespace synthlight::datasets {

std::optional<BalanceSubset> balance_subset(const AnnotationRecord& record) noexcept {
  std::array<bool, 3> has{};
  for (const auto& b : record.boxes) has[state_index(b.state)] = true;
  if (has[state_index(LightState::kYellow)]) return BalanceSubset::kYellow;
  if (has[state_index(LightState::kRed)]) return BalanceSubset::kRed;
  if (has[state_index(LightState::kGreen)]) return BalanceSubset::kGreen;
  return std::nullopt;
}

RebalanceResult rebalance_by_state(const DatasetManifest& manifest, std::size_t target_count) {
  std::array<std::vector<std::size_t>, 3> subsets;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    if (auto s = balance_subset(manifest.records[i])) subsets[static_cast<std::size_t>(*s)].push_back(i);
  }
  RebalanceResult result;
  for (std::size_t k = 0; k < 3; ++k) result.subset_sizes[k] = subsets[k].size();
  if (target_count > 0) {
    static constexpr std::array<const char*, 3> kNames = {"yellow", "red", "green"};
    for (std::size_t k = 0; k < 3; ++k) {
      if (subsets[k].empty()) {
        throw Error(ErrorCode::kEmptySubset, std::string("no record falls in the ") + kNames[k] + " subset");
      }
    }
  }
  std::vector<AnnotationRecord> out;
  out.reserve(target_count);
  for (std::size_t n = 0; n < target_count; ++n) {
    const std::size_t k = n % 3;
    const auto& subset = subsets[k];
    out.push_back(manifest.records[subset[result.draws[k] % subset.size()]]);
    ++result.draws[k];
  }
  result.manifest = make_manifest(std::move(out), manifest.seed, manifest.mode);
  result.manifest.generator_version = manifest.generator_version;
  return result;
}

AnnotationRecord resolve_overlaps(const AnnotationRecord& record, OverlapMode mode) {
  const std::size_t n = record.boxes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (intersect(record.boxes[i].rect(), record.boxes[j].rect()).area() > 0.0) {
        parent[find(j)] = find(i);
      }
    }
  }
  // Representative chosen per root; earliest wins ties.
  std::vector<std::size_t> best(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (best[r] == n) {
      best[r] = i;
      continue;
    }
    const long a = record.boxes[i].area();
    const long b = record.boxes[best[r]].area();
    if (mode == OverlapMode::kSmallest ? a < b : a > b) best[r] = i;
  }
  AnnotationRecord out = record;
  out.boxes.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (best[find(i)] == i) out.boxes.push_back(record.boxes[i]);
  }
  return out;
}

const LabelMap& lisa_label_map() {
  static const LabelMap map = {
      {"stop", LightState::kRed},        {"stopLeft", LightState::kRed},
      {"go", LightState::kGreen},        {"goLeft", LightState::kGreen},
      {"warning", LightState::kYellow},  {"warningLeft", LightState::kYellow},
  };
  return map;
}

AnnotationRecord remap_labels(const SourceRecord& record, const LabelMap& map, std::size_t& dropped) {
  AnnotationRecord out{record.image, record.width, record.height, {}};
  for (const auto& b : record.boxes) {
    const auto it = map.find(b.label);
    if (it == map.end()) {
      ++dropped;
      continue;
    }
    out.boxes.push_back({it->second, b.x_min, b.y_min, b.x_max, b.y_max});
  }
  return out;
}

}  // namespace synthlight::datasets
