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

#include "synthlight/datasets/backgrounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "json.hpp"
#include "synthlight/core/parallel.hpp"

namespace synthlight::datasets {
namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kParse, "COCO index: " + msg); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string_view to_string(BackgroundPolarity p) noexcept {
  switch (p) {
    case BackgroundPolarity::kNonTraffic:
      return "non_traffic";
    case BackgroundPolarity::kTrafficPositive:
      return "traffic_positive";
    case BackgroundPolarity::kTrafficNegative:
      return "traffic_negative";
  }
  return "non_traffic";
}

const std::vector<std::string>& default_filter_tags() {
  static const std::vector<std::string> tags = {"traffic light", "bicycle", "car",       "bus",
                                                "motorcycle",    "truck",   "stop sign"};
  return tags;
}

std::vector<BackgroundEntry> parse_coco_index(std::string_view text,
                                              const std::filesystem::path& image_root) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(e.what());
  }
  if (!root.is_object() || !root.contains("images") || !root["images"].is_array()) {
    fail("missing 'images' array");
  }
  std::map<long long, std::string> categories;
  if (root.contains("categories")) {
    for (const Json& c : root["categories"]) {
      if (!c.contains("id") || !c.contains("name")) fail("category without id or name");
      categories[c["id"].get<long long>()] = lower(c["name"].get<std::string>());
    }
  }
  std::vector<BackgroundEntry> entries;
  std::map<long long, std::size_t> by_id;
  for (const Json& img : root["images"]) {
    if (!img.contains("id") || !img.contains("file_name")) fail("image without id or file_name");
    BackgroundEntry e;
    e.path = image_root / img["file_name"].get<std::string>();
    e.width = img.value("width", 0);
    e.height = img.value("height", 0);
    by_id[img["id"].get<long long>()] = entries.size();
    entries.push_back(std::move(e));
  }
  if (root.contains("annotations")) {
    for (const Json& a : root["annotations"]) {
      if (!a.contains("image_id") || !a.contains("category_id")) fail("annotation without image_id or category_id");
      const auto it = by_id.find(a["image_id"].get<long long>());
      if (it == by_id.end()) continue;
      const auto cat = categories.find(a["category_id"].get<long long>());
      if (cat == categories.end()) continue;
      BackgroundEntry& e = entries[it->second];
      e.tags.push_back(cat->second);
      if (cat->second == "traffic light") ++e.light_count;
    }
  }
  for (auto& e : entries) {
    std::sort(e.tags.begin(), e.tags.end());
    e.tags.erase(std::unique(e.tags.begin(), e.tags.end()), e.tags.end());
  }
  return entries;
}

std::vector<BackgroundEntry> read_coco_index(const std::filesystem::path& index_path,
                                             const std::filesystem::path& image_root) {
  return parse_coco_index(read_text_file(index_path), image_root);
}

bool has_filtered_tag(const BackgroundEntry& entry, const std::vector<std::string>& filter_tags) {
  for (const auto& tag : entry.tags) {
    for (const auto& f : filter_tags) {
      if (lower(f) == tag) return true;
    }
  }
  return false;
}

Image fit_and_crop(const Image& image, int width, int height) {
  const double s = std::max(static_cast<double>(width) / image.width(),
                            static_cast<double>(height) / image.height());
  const int sw = std::max(width, static_cast<int>(std::lround(image.width() * s)));
  const int sh = std::max(height, static_cast<int>(std::lround(image.height() * s)));
  const Image scaled = resize_bilinear(image, sw, sh);
  return crop(scaled, (sw - width) / 2, (sh - height) / 2, width, height);
}

PrepareReport prepare_backgrounds(const std::vector<BackgroundEntry>& entries,
                                  const std::vector<std::string>& filter_tags,
                                  const std::filesystem::path& out_dir, std::string_view extension,
                                  int jobs) {
  PrepareReport report;
  std::vector<const BackgroundEntry*> candidates;
  for (const auto& e : entries) {
    if (has_filtered_tag(e, filter_tags)) {
      ++report.excluded_tagged;
    } else if (e.width > 0 && e.height > 0 && std::min(e.width, e.height) < kMinBackgroundDimension) {
      ++report.excluded_small;
    } else {
      candidates.push_back(&e);
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());

  enum class Outcome { kWritten, kSmall, kUnreadable };
  std::vector<Outcome> outcome(candidates.size());
  std::vector<std::filesystem::path> written(candidates.size());
  parallel_for(candidates.size(), static_cast<unsigned>(std::max(jobs, 0)), [&](std::size_t i) {
    std::optional<Image> img;
    try {
      img = read_image(candidates[i]->path);
    } catch (const Error&) {
      outcome[i] = Outcome::kUnreadable;
      return;
    }
    if (std::min(img->width(), img->height()) < kMinBackgroundDimension) {
      outcome[i] = Outcome::kSmall;
      return;
    }
    char name[32];
    std::snprintf(name, sizeof(name), "bg_%06zu", i);
    written[i] = out_dir / (std::string(name) + std::string(extension));
    write_image(written[i], convert_channels(fit_and_crop(*img), 3));
    outcome[i] = Outcome::kWritten;
  });
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    switch (outcome[i]) {
      case Outcome::kWritten: {
        BackgroundEntry e = *candidates[i];
        e.path = written[i];
        e.width = kBackgroundWidth;
        e.height = kBackgroundHeight;
        report.pool.entries.push_back(std::move(e));
        break;
      }
      case Outcome::kSmall:
        ++report.excluded_small;
        break;
      case Outcome::kUnreadable:
        report.unreadable.push_back(candidates[i]->path.string());
        break;
    }
  }
  return report;
}

std::pair<BackgroundPool, BackgroundPool> split_pos_neg(const DatasetManifest& annotated,
                                                        const std::filesystem::path& image_root) {
  BackgroundPool pos{BackgroundPolarity::kTrafficPositive, {}};
  BackgroundPool neg{BackgroundPolarity::kTrafficNegative, {}};
  for (const auto& r : annotated.records) {
    BackgroundEntry e;
    e.path = image_root.empty() ? std::filesystem::path(r.image) : image_root / r.image;
    e.width = r.width;
    e.height = r.height;
    e.light_count = r.boxes.size();
    (e.light_count > 0 ? pos : neg).entries.push_back(std::move(e));
  }
  return {std::move(pos), std::move(neg)};
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto& de : std::filesystem::directory_iterator(dir, ec)) {
    if (!de.is_regular_file()) continue;
    const std::string ext = lower(de.path().extension().string());
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(de.path());
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::string pool_to_json(const BackgroundPool& pool) {
  nlohmann::ordered_json root;
  root["polarity"] = std::string(to_string(pool.polarity));
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  for (const auto& e : pool.entries) {
    nlohmann::ordered_json j;
    j["image"] = e.path.generic_string();
    j["width"] = e.width;
    j["height"] = e.height;
    j["tags"] = e.tags;
    j["lights"] = e.light_count;
    images.push_back(std::move(j));
  }
  root["images"] = std::move(images);
  return root.dump(2) + "\n";
}

}  // namespace synthlight::datasets
