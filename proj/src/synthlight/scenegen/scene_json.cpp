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

#include "synthlight/scenegen/scene_json.hpp"

#include <fstream>

namespace synthlight::scenegen {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json rgb_json(const Rgb& c) { return ordered_json::array({c.r, c.g, c.b}); }

// Every key of `patch` must exist in `base` (recursively for objects).
void check_known_keys(const json& base, const json& patch, const std::string& prefix) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) {
      throw Error(ErrorCode::kConfigInvalid, "unknown scene config key '" + key + "'");
    }
    if (it.value().is_object() && base.at(it.key()).is_object()) {
      check_known_keys(base.at(it.key()), it.value(), key);
    }
  }
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("scene config key '") + key + "': " + e.what());
  }
}

}  // namespace

ordered_json to_json(const SceneConfig& cfg) {
  ordered_json j;
  j["lane_width"] = cfg.lane_width;
  j["stretch_unit"] = cfg.stretch_unit;
  j["camera_height_range"] = cfg.camera_height_range;
  j["camera_distance_range_in_h"] = cfg.camera_distance_range_in_h;
  const auto& sp = cfg.stretch_probabilities;
  j["stretch_probabilities"] = {{"south", sp.south},
                                {"west", sp.west},
                                {"north", sp.north},
                                {"east_unconditional", sp.east_unconditional},
                                {"east_fallback", sp.east_fallback}};
  j["lane_count_choices"] = cfg.lane_count_choices;
  j["state_probabilities"] = {{"red", cfg.state_probabilities[0]},
                              {"yellow", cfg.state_probabilities[1]},
                              {"green", cfg.state_probabilities[2]}};
  const auto& tl = cfg.traffic_light_dims;
  j["traffic_light_dims"] = {{"body_width", tl.body_width},
                             {"body_height", tl.body_height},
                             {"body_depth", tl.body_depth},
                             {"bulb_radius", tl.bulb_radius},
                             {"visor_length", tl.visor_length}};
  const auto& pd = cfg.pole_dims;
  j["pole_dims"] = {{"radius", pd.radius},
                    {"axis_height", pd.axis_height},
                    {"extension_length", pd.extension_length}};
  const auto& vd = cfg.vehicle_dims;
  j["vehicle_dims"] = {{"length", vd.length}, {"width", vd.width}, {"height", vd.height}};
  j["vehicle_model_path"] = cfg.vehicle_model_path;
  j["vfov_degrees"] = cfg.vfov_degrees;
  j["image_size"] = ordered_json::array({cfg.image_width, cfg.image_height});
  j["crosswalk_probability"] = cfg.crosswalk_probability;
  j["max_vehicles_per_lane"] = cfg.max_vehicles_per_lane;
  j["extension_probability"] = cfg.extension_probability;
  j["light_yaw_jitter_degrees"] = cfg.light_yaw_jitter_degrees;
  j["sun_elevation_range_degrees"] = cfg.sun_elevation_range_degrees;
  return j;
}

SceneConfig scene_config_from_json(const json& patch) {
  if (!patch.is_object()) {
    throw Error(ErrorCode::kConfigInvalid, "scene config must be a JSON object");
  }
  json j = json::parse(to_json(SceneConfig{}).dump());
  check_known_keys(j, patch, "");
  j.merge_patch(patch);

  SceneConfig cfg;
  cfg.lane_width = get<double>(j, "lane_width");
  cfg.stretch_unit = get<double>(j, "stretch_unit");
  cfg.camera_height_range = get<std::array<double, 2>>(j, "camera_height_range");
  cfg.camera_distance_range_in_h = get<std::array<double, 2>>(j, "camera_distance_range_in_h");
  const json& sp = j.at("stretch_probabilities");
  cfg.stretch_probabilities = {get<double>(sp, "south"), get<double>(sp, "west"),
                               get<double>(sp, "north"), get<double>(sp, "east_unconditional"),
                               get<double>(sp, "east_fallback")};
  cfg.lane_count_choices = get<std::vector<int>>(j, "lane_count_choices");
  const json& st = j.at("state_probabilities");
  cfg.state_probabilities = {get<double>(st, "red"), get<double>(st, "yellow"),
                             get<double>(st, "green")};
  const json& tl = j.at("traffic_light_dims");
  cfg.traffic_light_dims = {get<double>(tl, "body_width"), get<double>(tl, "body_height"),
                            get<double>(tl, "body_depth"), get<double>(tl, "bulb_radius"),
                            get<double>(tl, "visor_length")};
  const json& pd = j.at("pole_dims");
  cfg.pole_dims = {get<double>(pd, "radius"), get<double>(pd, "axis_height"),
                   get<double>(pd, "extension_length")};
  const json& vd = j.at("vehicle_dims");
  cfg.vehicle_dims = {get<double>(vd, "length"), get<double>(vd, "width"),
                      get<double>(vd, "height")};
  cfg.vehicle_model_path = get<std::string>(j, "vehicle_model_path");
  cfg.vfov_degrees = get<double>(j, "vfov_degrees");
  const auto size = get<std::array<int, 2>>(j, "image_size");
  cfg.image_width = size[0];
  cfg.image_height = size[1];
  cfg.crosswalk_probability = get<double>(j, "crosswalk_probability");
  cfg.max_vehicles_per_lane = get<int>(j, "max_vehicles_per_lane");
  cfg.extension_probability = get<double>(j, "extension_probability");
  cfg.light_yaw_jitter_degrees = get<double>(j, "light_yaw_jitter_degrees");
  cfg.sun_elevation_range_degrees = get<std::array<double, 2>>(j, "sun_elevation_range_degrees");
  validate(cfg);
  return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scene config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigInvalid, "scene config " + path.string() + ": " + e.what());
  }
  return scene_config_from_json(j);
}

ordered_json to_json(const SceneGraph& scene) {
  ordered_json j;
  j["seed"] = scene.seed;
  j["image_size"] = ordered_json::array({scene.image_width, scene.image_height});
  j["sun_direction"] = vec_json(scene.sun_direction);
  const CameraSpec& cam = scene.camera;
  j["camera"] = {{"lane_slot", cam.lane_slot},
                 {"lane_offset", cam.lane_offset},
                 {"height", cam.height},
                 {"distance_to_intersection", cam.distance_to_intersection},
                 {"position", vec_json(cam.position)},
                 {"look_at", vec_json(cam.look_at)},
                 {"vfov_degrees", cam.vfov_degrees}};
  ordered_json stretches = ordered_json::array();
  for (const RoadStretch& s : scene.stretches) {
    stretches.push_back({{"direction", to_string(s.direction)},
                         {"rotation_degrees", rotation_degrees(s.direction)},
                         {"lanes", s.lanes},
                         {"length", s.length},
                         {"width", s.width},
                         {"has_crosswalk", s.has_crosswalk},
                         {"intersection_offset", s.intersection_offset}});
  }
  j["stretches"] = std::move(stretches);
  ordered_json poles = ordered_json::array();
  for (const PoleSpec& p : scene.poles) {
    ordered_json lights = ordered_json::array();
    for (const TrafficLightSpec& l : p.mounted_lights) {
      ordered_json lj = {{"state", to_string(l.state)},
                         {"variant", to_string(l.variant)},
                         {"mount", to_string(l.mount)},
                         {"position", vec_json(l.position)},
                         {"yaw", l.yaw},
                         {"emitted_tone", rgb_json(l.emitted_tone)},
                         {"associated_stretch", to_string(l.associated_stretch)}};
      if (l.timer_segment_mask) lj["timer_segment_mask"] = *l.timer_segment_mask;
      lights.push_back(std::move(lj));
    }
    poles.push_back({{"stretch", to_string(p.stretch)},
                     {"side", p.side == Side::kLeft ? "left" : "right"},
                     {"has_extension", p.has_extension},
                     {"position", vec_json(p.position)},
                     {"extension_direction", vec_json(p.extension_direction)},
                     {"extension_length", p.extension_length},
                     {"lights", std::move(lights)}});
  }
  j["poles"] = std::move(poles);
  ordered_json vehicles = ordered_json::array();
  for (const VehicleSpec& v : scene.vehicles) {
    ordered_json corners = ordered_json::array();
    for (const Vec3& c : v.bbox3d) corners.push_back(vec_json(c));
    vehicles.push_back({{"stretch", to_string(v.stretch)},
                        {"lane_index", v.lane_index},
                        {"offset_along_lane", v.offset_along_lane},
                        {"position", vec_json(v.position)},
                        {"heading", v.heading},
                        {"body_color", rgb_json(v.body_color)},
                        {"bbox3d", std::move(corners)}});
  }
  j["vehicles"] = std::move(vehicles);
  return j;
}

}  // namespace synthlight::scenegen
