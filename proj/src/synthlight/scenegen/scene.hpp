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

// Scene description types for the procedural traffic-intersection generator.
//
// World frame: x points east, y up, z north. The intersection center is the
// origin and the road surface is the plane y = 0. Every stretch is a
// rectangle that starts at the origin and extends outward along its
// direction, so overlapping stretch rectangles form the crossing area.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synthlight/core/common.hpp"

namespace synthlight::scenegen {

enum class Direction { kSouth = 0, kWest = 1, kNorth = 2, kEast = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::kSouth, Direction::kWest, Direction::kNorth, Direction::kEast};

std::string_view to_string(Direction d) noexcept;

/// Rotation of the stretch about the vertical axis relative to south.
double rotation_degrees(Direction d) noexcept;

/// Unit vector pointing from the intersection center along the stretch.
Vec3 outward(Direction d) noexcept;

/// Unit vector to the right of a driver approaching the intersection on `d`.
Vec3 lateral(Direction d) noexcept;

/// Set of generated stretch directions.
struct StretchSet {
  std::array<bool, 4> present{};

  bool contains(Direction d) const noexcept { return present[static_cast<int>(d)]; }
  void insert(Direction d) noexcept { present[static_cast<int>(d)] = true; }
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (bool p : present) n += p ? 1 : 0;
    return n;
  }
  friend bool operator==(const StretchSet&, const StretchSet&) = default;
};

struct StretchProbabilities {
  double south = 1.0;
  double west = 0.8;
  double north = 0.8;
  double east_unconditional = 1.0;  // used when neither north nor west exists
  double east_fallback = 0.8;
};

struct TrafficLightDims {
  double body_width = 100.0;
  double body_height = 260.0;
  double body_depth = 80.0;
  double bulb_radius = 36.0;
  double visor_length = 45.0;
};

struct PoleDims {
  double radius = 20.0;
  double axis_height = 1600.0;
  double extension_length = 1500.0;  // upper bound; actual length is sampled
};

struct VehicleDims {
  double length = 800.0;
  double width = 320.0;
  double height = 280.0;
};

struct SceneConfig {
  double lane_width = 600.0;    // W
  double stretch_unit = 600.0;  // H
  std::array<double, 2> camera_height_range{200.0, 300.0};
  std::array<double, 2> camera_distance_range_in_h{8.9, 21.0};
  StretchProbabilities stretch_probabilities;
  std::vector<int> lane_count_choices{2, 4, 6};
  std::array<double, 3> state_probabilities{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  TrafficLightDims traffic_light_dims;
  PoleDims pole_dims;
  VehicleDims vehicle_dims;
  std::string vehicle_model_path;  // empty: built-in box car
  double vfov_degrees = 60.0;
  int image_width = 640;
  int image_height = 480;

  double crosswalk_probability = 0.5;
  int max_vehicles_per_lane = 3;
  double extension_probability = 0.5;
  double light_yaw_jitter_degrees = 8.0;
  std::array<double, 2> sun_elevation_range_degrees{30.0, 90.0};
};

/// Throws Error(kConfigInvalid) naming the first violated invariant.
void validate(const SceneConfig& cfg);

struct RoadStretch {
  Direction direction = Direction::kSouth;
  int lanes = 2;
  double length = 0.0;  // 20 H
  double width = 0.0;   // lanes * W
  bool has_crosswalk = false;
  double intersection_offset = 0.0;  // distance from the origin to the stretch's crossing edge

  friend bool operator==(const RoadStretch&, const RoadStretch&) = default;
};

enum class LightVariant { kFullBulb, kTimer, kArrowLeft, kArrowRight };
enum class LightMount { kPoleAxis, kExtensionSlot1, kExtensionSlot2 };

std::string_view to_string(LightVariant v) noexcept;
std::string_view to_string(LightMount m) noexcept;

inline constexpr int kTimerSegments = 10;  // two digits, five segments each

struct TrafficLightSpec {
  LightState state = LightState::kRed;
  LightVariant variant = LightVariant::kFullBulb;
  LightMount mount = LightMount::kPoleAxis;
  Vec3 position;       // body center
  double yaw = 0.0;    // radians; heading of the front face normal in the xz plane
  Rgb emitted_tone;
  std::optional<std::array<bool, kTimerSegments>> timer_segment_mask;
  Direction associated_stretch = Direction::kSouth;

  friend bool operator==(const TrafficLightSpec&, const TrafficLightSpec&) = default;
};

enum class Side { kLeft, kRight };

struct PoleSpec {
  Direction stretch = Direction::kSouth;
  Side side = Side::kRight;
  bool has_extension = false;
  Vec3 position;              // base of the axis on the ground
  Vec3 extension_direction;   // horizontal unit vector, toward the road
  double extension_length = 0.0;
  std::vector<TrafficLightSpec> mounted_lights;

  friend bool operator==(const PoleSpec&, const PoleSpec&) = default;
};

struct VehicleSpec {
  Direction stretch = Direction::kSouth;
  int lane_index = 0;
  double offset_along_lane = 0.0;
  Vec3 position;      // center of the footprint on the ground
  double heading = 0.0;  // radians, direction the vehicle's front points to
  Rgb body_color;
  std::array<Vec3, 8> bbox3d{};

  friend bool operator==(const VehicleSpec&, const VehicleSpec&) = default;
};

struct CameraSpec {
  int lane_slot = 0;
  double lane_offset = 0.0;  // (slot + 0.5) W
  double height = 0.0;
  double distance_to_intersection = 0.0;
  Vec3 position;
  Vec3 look_at;
  double vfov_degrees = 60.0;

  friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

struct SceneGraph {
  std::vector<RoadStretch> stretches;
  std::vector<PoleSpec> poles;
  std::vector<VehicleSpec> vehicles;
  CameraSpec camera;
  Vec3 sun_direction;  // direction the light travels; y < 0
  std::uint64_t seed = 0;
  int image_width = 640;
  int image_height = 480;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

/// Orthonormal frame of a traffic light: `forward` is the front face normal.
struct LightFrame {
  Vec3 center;
  Vec3 forward;
  Vec3 right;
  Vec3 up;
};

LightFrame light_frame(const TrafficLightSpec& light) noexcept;

/// The four corners of the body's front rectangle.
std::array<Vec3, 4> front_face_corners(const TrafficLightSpec& light,
                                       const TrafficLightDims& dims) noexcept;

/// Bulb centers, top (red) to bottom (green), on the front face plane.
std::array<Vec3, 3> bulb_centers(const TrafficLightSpec& light,
                                 const TrafficLightDims& dims) noexcept;

/// Corners of an oriented box with footprint center `base` on the ground.
std::array<Vec3, 8> oriented_box_corners(const Vec3& base, double heading,
                                         const VehicleDims& dims) noexcept;

}  // namespace synthlight::scenegen
