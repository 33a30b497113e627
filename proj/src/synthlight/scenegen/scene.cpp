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

#include "synthlight/scenegen/scene.hpp"

#include <cmath>

namespace synthlight::scenegen {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::kSouth:
      return "south";
    case Direction::kWest:
      return "west";
    case Direction::kNorth:
      return "north";
    case Direction::kEast:
      return "east";
  }
  return "south";
}

std::string_view to_string(LightVariant v) noexcept {
  switch (v) {
    case LightVariant::kFullBulb:
      return "full_bulb";
    case LightVariant::kTimer:
      return "timer";
    case LightVariant::kArrowLeft:
      return "arrow_left";
    case LightVariant::kArrowRight:
      return "arrow_right";
  }
  return "full_bulb";
}

std::string_view to_string(LightMount m) noexcept {
  switch (m) {
    case LightMount::kPoleAxis:
      return "pole_axis";
    case LightMount::kExtensionSlot1:
      return "extension_slot_1";
    case LightMount::kExtensionSlot2:
      return "extension_slot_2";
  }
  return "pole_axis";
}

double rotation_degrees(Direction d) noexcept {
  switch (d) {
    case Direction::kSouth:
      return 0.0;
    case Direction::kWest:
      return 90.0;
    case Direction::kNorth:
      return 180.0;
    case Direction::kEast:
      return -90.0;
  }
  return 0.0;
}

Vec3 outward(Direction d) noexcept {
  switch (d) {
    case Direction::kSouth:
      return {0.0, 0.0, -1.0};
    case Direction::kWest:
      return {-1.0, 0.0, 0.0};
    case Direction::kNorth:
      return {0.0, 0.0, 1.0};
    case Direction::kEast:
      return {1.0, 0.0, 0.0};
  }
  return {0.0, 0.0, -1.0};
}

Vec3 lateral(Direction d) noexcept {
  // Driver heading is -outward; right-hand side is up x heading.
  return cross(Vec3{0.0, 1.0, 0.0}, -outward(d));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kConfigInvalid, "invalid scene config: " + what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const SceneConfig& cfg) {
  require(cfg.lane_width > 0.0, "lane_width must be > 0");
  require(cfg.stretch_unit > 0.0, "stretch_unit must be > 0");
  require(cfg.camera_height_range[0] > 0.0 &&
              cfg.camera_height_range[0] < cfg.camera_height_range[1],
          "camera_height_range must satisfy 0 < min < max");
  require(cfg.camera_distance_range_in_h[0] > 0.0 &&
              cfg.camera_distance_range_in_h[0] < cfg.camera_distance_range_in_h[1],
          "camera_distance_range_in_h must satisfy 0 < min < max");
  const auto& sp = cfg.stretch_probabilities;
  require(is_probability(sp.south) && is_probability(sp.west) && is_probability(sp.north) &&
              is_probability(sp.east_unconditional) && is_probability(sp.east_fallback),
          "stretch probabilities must lie in [0,1]");
  require(sp.south == 1.0, "south stretch probability must be 1");
  require(sp.east_unconditional == 1.0,
          "east probability without west/north must be 1 (at least two stretches)");
  require(!cfg.lane_count_choices.empty(), "lane_count_choices must not be empty");
  for (int l : cfg.lane_count_choices) {
    require(l > 0 && l % 2 == 0, "lane counts must be positive and even");
  }
  double total = 0.0;
  for (double p : cfg.state_probabilities) {
    require(is_probability(p), "state probabilities must lie in [0,1]");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-9, "state probabilities must sum to 1");
  const auto& tl = cfg.traffic_light_dims;
  require(tl.body_width > 0 && tl.body_height > 0 && tl.body_depth > 0 && tl.bulb_radius > 0 &&
              tl.visor_length > 0,
          "traffic light dimensions must be > 0");
  require(6.0 * tl.bulb_radius <= tl.body_height, "three bulbs must fit in the body height");
  const auto& pd = cfg.pole_dims;
  require(pd.radius > 0 && pd.axis_height > 0 && pd.extension_length > 0,
          "pole dimensions must be > 0");
  require(pd.axis_height > tl.body_height, "pole must be taller than a traffic light");
  const auto& vd = cfg.vehicle_dims;
  require(vd.length > 0 && vd.width > 0 && vd.height > 0, "vehicle dimensions must be > 0");
  require(vd.width < cfg.lane_width, "vehicle must fit inside a lane");
  require(cfg.vfov_degrees > 0.0 && cfg.vfov_degrees < 180.0, "vfov_degrees must be in (0,180)");
  require(cfg.image_width > 0 && cfg.image_height > 0, "image size must be positive");
  require(is_probability(cfg.crosswalk_probability), "crosswalk_probability must lie in [0,1]");
  require(is_probability(cfg.extension_probability), "extension_probability must lie in [0,1]");
  require(cfg.max_vehicles_per_lane >= 0, "max_vehicles_per_lane must be >= 0");
  require(cfg.light_yaw_jitter_degrees >= 0.0, "light_yaw_jitter_degrees must be >= 0");
  const auto& el = cfg.sun_elevation_range_degrees;
  require(el[0] > 0.0 && el[0] <= el[1] && el[1] <= 90.0,
          "sun elevation must lie in (0,90] so light comes from above");
}

LightFrame light_frame(const TrafficLightSpec& light) noexcept {
  LightFrame f;
  f.center = light.position;
  f.forward = {std::sin(light.yaw), 0.0, std::cos(light.yaw)};
  f.up = {0.0, 1.0, 0.0};
  // Right as seen by an observer looking at the front face.
  f.right = cross(f.forward, f.up);
  return f;
}

std::array<Vec3, 4> front_face_corners(const TrafficLightSpec& light,
                                       const TrafficLightDims& dims) noexcept {
  const LightFrame f = light_frame(light);
  const Vec3 face = f.center + f.forward * (0.5 * dims.body_depth);
  const Vec3 hw = f.right * (0.5 * dims.body_width);
  const Vec3 hh = f.up * (0.5 * dims.body_height);
  return {face - hw + hh, face + hw + hh, face + hw - hh, face - hw - hh};
}

std::array<Vec3, 3> bulb_centers(const TrafficLightSpec& light,
                                 const TrafficLightDims& dims) noexcept {
  const LightFrame f = light_frame(light);
  const Vec3 face = f.center + f.forward * (0.5 * dims.body_depth);
  const double spacing = dims.body_height / 3.0;
  return {face + f.up * spacing, face, face - f.up * spacing};
}

std::array<Vec3, 8> oriented_box_corners(const Vec3& base, double heading,
                                         const VehicleDims& dims) noexcept {
  const Vec3 fwd{std::sin(heading), 0.0, std::cos(heading)};
  const Vec3 side = cross(Vec3{0.0, 1.0, 0.0}, fwd);
  const Vec3 up{0.0, 1.0, 0.0};
  std::array<Vec3, 8> c{};
  int i = 0;
  for (double sy : {0.0, 1.0}) {
    for (double sf : {-0.5, 0.5}) {
      for (double ss : {-0.5, 0.5}) {
        c[i++] = base + fwd * (sf * dims.length) + side * (ss * dims.width) + up * (sy * dims.height);
      }
    }
  }
  return c;
}

}  // namespace synthlight::scenegen
