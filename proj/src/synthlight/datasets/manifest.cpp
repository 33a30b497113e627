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

#include "synthlight/datasets/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace synthlight::datasets {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 4> kModeNames = {"fully_contextualized", "uncontextualized",
                                                        "templates_only", "external"};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kParse, "manifest: " + msg); }

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing key '") + key + "'");
  return obj.at(key);
}

template <class T>
T require_int(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
  return v.get<T>();
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(e.what());
  }
}

}  // namespace

std::string_view to_string(DatasetMode m) noexcept { return kModeNames[static_cast<std::size_t>(m)]; }

std::optional<DatasetMode> parse_mode(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == s) return static_cast<DatasetMode>(i);
  }
  return std::nullopt;
}

std::optional<AnnotationBox> round_box(const LabeledBox& label, int width, int height) {
  auto half_up = [](double v, int hi) {
    return static_cast<int>(std::clamp(std::floor(v + 0.5), 0.0, static_cast<double>(hi)));
  };
  AnnotationBox b{label.state, half_up(label.box.x_min, width), half_up(label.box.y_min, height),
                  half_up(label.box.x_max, width), half_up(label.box.y_max, height)};
  if (b.x_min >= b.x_max || b.y_min >= b.y_max) return std::nullopt;
  return b;
}

StateCounts recount(std::span<const AnnotationRecord> records) noexcept {
  StateCounts c{};
  for (const auto& r : records) {
    for (const auto& b : r.boxes) ++c[state_index(b.state)];
  }
  return c;
}

DatasetManifest make_manifest(std::vector<AnnotationRecord> records, std::uint64_t seed,
                              DatasetMode mode) {
  DatasetManifest m;
  m.seed = seed;
  m.mode = mode;
  m.counts = recount(records);
  m.generator_version = std::string(kVersion);
  m.records = std::move(records);
  return m;
}

std::string serialize_manifest(const DatasetManifest& manifest) {
  Json meta;
  meta["seed"] = manifest.seed;
  meta["mode"] = std::string(to_string(manifest.mode));
  Json counts;
  for (LightState s : kAllStates) counts[std::string(to_string(s))] = manifest.counts[state_index(s)];
  meta["counts"] = counts;
  if (!manifest.generator_version.empty()) meta["generator_version"] = manifest.generator_version;
  Json records = Json::array();
  for (const auto& r : manifest.records) {
    Json rec;
    rec["image"] = r.image;
    rec["width"] = r.width;
    rec["height"] = r.height;
    Json boxes = Json::array();
    for (const auto& b : r.boxes) {
      Json jb;
      jb["state"] = std::string(to_string(b.state));
      jb["xmin"] = b.x_min;
      jb["ymin"] = b.y_min;
      jb["xmax"] = b.x_max;
      jb["ymax"] = b.y_max;
      boxes.push_back(std::move(jb));
    }
    rec["boxes"] = std::move(boxes);
    records.push_back(std::move(rec));
  }
  Json root;
  root["metadata"] = std::move(meta);
  root["records"] = std::move(records);
  return root.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  const Json root = parse_json(text);
  const Json& meta = require(root, "metadata");
  DatasetManifest m;
  m.seed = require_int<std::uint64_t>(meta, "seed");
  const auto mode = parse_mode(require_string(meta, "mode"));
  if (!mode) fail("unknown mode");
  m.mode = *mode;
  const Json& counts = require(meta, "counts");
  for (LightState s : kAllStates) {
    m.counts[state_index(s)] = require_int<std::size_t>(counts, std::string(to_string(s)).c_str());
  }
  if (meta.contains("generator_version")) m.generator_version = require_string(meta, "generator_version");

  const Json& records = require(root, "records");
  if (!records.is_array()) fail("'records' must be an array");
  m.records.reserve(records.size());
  for (const Json& jr : records) {
    AnnotationRecord r;
    r.image = require_string(jr, "image");
    r.width = require_int<int>(jr, "width");
    r.height = require_int<int>(jr, "height");
    if (r.width <= 0 || r.height <= 0) fail("non-positive image size for " + r.image);
    const Json& boxes = require(jr, "boxes");
    if (!boxes.is_array()) fail("'boxes' must be an array");
    for (const Json& jb : boxes) {
      AnnotationBox b;
      const auto state = parse_state(require_string(jb, "state"));
      if (!state) fail("unknown state in " + r.image);
      b.state = *state;
      b.x_min = require_int<int>(jb, "xmin");
      b.y_min = require_int<int>(jb, "ymin");
      b.x_max = require_int<int>(jb, "xmax");
      b.y_max = require_int<int>(jb, "ymax");
      if (b.x_min < 0 || b.y_min < 0 || b.x_min >= b.x_max || b.y_min >= b.y_max ||
          b.x_max > r.width || b.y_max > r.height) {
        fail("box out of bounds in " + r.image);
      }
      r.boxes.push_back(b);
    }
    m.records.push_back(std::move(r));
  }
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_text_file(path));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename into " + path.string() + ": " + ec.message());
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  write_file_atomic(path, serialize_manifest(manifest));
}

std::vector<SourceRecord> parse_source_records(std::string_view text) {
  const Json root = parse_json(text);
  const Json& records = require(root, "records");
  if (!records.is_array()) fail("'records' must be an array");
  std::vector<SourceRecord> out;
  out.reserve(records.size());
  for (const Json& jr : records) {
    SourceRecord r;
    r.image = require_string(jr, "image");
    r.width = require_int<int>(jr, "width");
    r.height = require_int<int>(jr, "height");
    for (const Json& jb : require(jr, "boxes")) {
      r.boxes.push_back({require_string(jb, "state"), require_int<int>(jb, "xmin"),
                         require_int<int>(jb, "ymin"), require_int<int>(jb, "xmax"),
                         require_int<int>(jb, "ymax")});
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace synthlight::datasets
