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

#include "synthlight/eval/predictions.hpp"

#include "json.hpp"

namespace synthlight::eval {
namespace {

using Json = nlohmann::json;

double number(const Json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) throw ParseError(line, std::string("missing '") + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(line, std::string("'") + key + "' is not a number");
  return v.get<double>();
}

Detection parse_line(std::string_view text, std::size_t line) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw ParseError(line, "invalid JSON");
  }
  if (!j.is_object()) throw ParseError(line, "expected a JSON object");
  Detection d;
  if (!j.contains("image") || !j["image"].is_string()) throw ParseError(line, "missing string 'image'");
  d.image_id = j["image"].get<std::string>();
  if (!j.contains("state") || !j["state"].is_string()) throw ParseError(line, "missing string 'state'");
  const auto state = parse_state(j["state"].get<std::string>());
  if (!state) throw ParseError(line, "unknown state '" + j["state"].get<std::string>() + "'");
  d.state = *state;
  d.confidence = number(j, "confidence", line);
  if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) throw ParseError(line, "confidence outside [0, 1]");
  d.box = {number(j, "xmin", line), number(j, "ymin", line), number(j, "xmax", line),
           number(j, "ymax", line)};
  if (!(d.box.x_min < d.box.x_max && d.box.y_min < d.box.y_max)) throw ParseError(line, "degenerate box");
  return d;
}

}  // namespace

std::vector<Detection> parse_predictions(std::string_view text) {
  std::vector<Detection> out;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.push_back(parse_line(row, line));
  }
  return out;
}

std::vector<Detection> load_predictions(const std::filesystem::path& path) {
  return parse_predictions(datasets::read_text_file(path));
}

std::string predictions_to_jsonl(std::span<const Detection> detections) {
  std::string out;
  for (const auto& d : detections) {
    nlohmann::ordered_json j;
    j["image"] = d.image_id;
    j["state"] = std::string(to_string(d.state));
    j["confidence"] = d.confidence;
    j["xmin"] = d.box.x_min;
    j["ymin"] = d.box.y_min;
    j["xmax"] = d.box.x_max;
    j["ymax"] = d.box.y_max;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<GroundTruth> ground_truths(const datasets::DatasetManifest& manifest) {
  std::vector<GroundTruth> out;
  for (const auto& r : manifest.records) {
    for (const auto& b : r.boxes) out.push_back({r.image, b.state, b.rect()});
  }
  return out;
}

}  // namespace synthlight::eval
