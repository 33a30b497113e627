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

#include "synthlight/scenegen/scene_builder.hpp"

#include <algorithm>
#include <cmath>

#include "synthlight/render/labels.hpp"
#include "synthlight/render/projection.hpp"
#include "synthlight/scenegen/stretches.hpp"

namespace synthlight::scenegen {
namespace {

constexpr Vec3 kUp{0.0, 1.0, 0.0};

Rgb hsv_to_rgb(double h_deg, double s, double v) {
  h_deg = std::fmod(std::fmod(h_deg, 360.0) + 360.0, 360.0);
  const double c = v * s;
  const double hp = h_deg / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  auto to8 = [m](double ch) {
    return static_cast<std::uint8_t>(std::lround(std::clamp((ch + m) * 255.0, 0.0, 255.0)));
  };
  return {to8(r), to8(g), to8(b)};
}

double heading_of(const Vec3& dir) { return std::atan2(dir.x, dir.z); }

LightState sample_state(Rng& rng, const SceneConfig& cfg) {
  return static_cast<LightState>(rng.weighted_index(cfg.state_probabilities));
}

LightVariant sample_variant(Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return LightVariant::kFullBulb;
    case 1:
      return LightVariant::kTimer;
    default:
      return rng.bernoulli(0.5) ? LightVariant::kArrowLeft : LightVariant::kArrowRight;
  }
}

TrafficLightSpec sample_light(Rng& rng, const SceneConfig& cfg, Direction stretch,
                              LightMount mount, const Vec3& position) {
  TrafficLightSpec light;
  light.associated_stretch = stretch;
  light.mount = mount;
  light.position = position;
  const double jitter = deg_to_rad(cfg.light_yaw_jitter_degrees);
  light.yaw = heading_of(outward(stretch)) + rng.uniform(-jitter, jitter);
  light.state = sample_state(rng, cfg);
  light.variant = sample_variant(rng);
  light.emitted_tone = sample_state_tone(rng, light.state);
  if (light.variant == LightVariant::kTimer) {
    std::array<bool, kTimerSegments> mask{};
    bool any = false;
    for (bool& seg : mask) {
      seg = rng.bernoulli(0.5);
      any = any || seg;
    }
    // A blank timer would leave a yellow timer light with nothing lit.
    if (!any) mask[static_cast<std::size_t>(rng.uniform_int(0, kTimerSegments - 1))] = true;
    light.timer_segment_mask = mask;
  }
  return light;
}

double crossing_half_width(const std::array<int, 4>& lanes, Direction d, double lane_width) {
  const bool along_z = d == Direction::kSouth || d == Direction::kNorth;
  const int a = along_z ? lanes[static_cast<int>(Direction::kWest)]
                        : lanes[static_cast<int>(Direction::kSouth)];
  const int b = along_z ? lanes[static_cast<int>(Direction::kEast)]
                        : lanes[static_cast<int>(Direction::kNorth)];
  return 0.5 * std::max(a, b) * lane_width;
}

}  // namespace

bool filter_vehicle(const Rect& vehicle_box, std::span<const Rect> light_boxes) noexcept {
  for (const Rect& light : light_boxes) {
    const double area = light.area();
    if (area <= 0.0) continue;
    if (intersect(vehicle_box, light).area() >= 0.5 * area) return false;
  }
  return true;
}

Rgb sample_state_tone(Rng& rng, LightState state) {
  double h = 0.0;
  switch (state) {
    case LightState::kRed:
      h = rng.uniform(-10.0, 8.0);
      break;
    case LightState::kYellow:
      h = rng.uniform(38.0, 55.0);
      break;
    case LightState::kGreen:
      h = rng.uniform(130.0, 175.0);
      break;
  }
  const double s = rng.uniform(0.75, 1.0);
  const double v = rng.uniform(0.85, 1.0);
  return hsv_to_rgb(h, s, v);
}

SceneBuilder::SceneBuilder(SceneConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  vehicle_mesh_ = cfg_.vehicle_model_path.empty()
                      ? default_vehicle_mesh(cfg_.vehicle_dims)
                      : fit_to_dims(load_obj(cfg_.vehicle_model_path), cfg_.vehicle_dims);
}

SceneGraph SceneBuilder::build(std::uint64_t seed) const {
  const SceneConfig& cfg = cfg_;
  const double W = cfg.lane_width;
  const double H = cfg.stretch_unit;
  Rng rng(seed);
  SceneGraph scene;
  scene.seed = seed;
  scene.image_width = cfg.image_width;
  scene.image_height = cfg.image_height;

  // Road.
  const StretchSet present = sample_stretches(rng, cfg);
  std::array<int, 4> lanes{};
  std::array<bool, 4> crosswalk{};
  for (Direction d : kAllDirections) {
    if (!present.contains(d)) continue;
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(cfg.lane_count_choices.size()) - 1);
    lanes[static_cast<int>(d)] = cfg.lane_count_choices[static_cast<std::size_t>(pick)];
    crosswalk[static_cast<int>(d)] = rng.bernoulli(cfg.crosswalk_probability);
  }
  for (Direction d : kAllDirections) {
    if (!present.contains(d)) continue;
    RoadStretch s;
    s.direction = d;
    s.lanes = lanes[static_cast<int>(d)];
    s.length = 20.0 * H;
    s.width = s.lanes * W;
    s.has_crosswalk = crosswalk[static_cast<int>(d)];
    s.intersection_offset = crossing_half_width(lanes, d, W);
    scene.stretches.push_back(s);
  }
  const RoadStretch& south = scene.stretches.front();

  // Camera: centered in one of the right-hand lanes of the south stretch.
  CameraSpec& cam = scene.camera;
  const int slots = std::min(3, south.lanes / 2);
  cam.lane_slot = static_cast<int>(rng.uniform_int(0, slots - 1));
  cam.lane_offset = (cam.lane_slot + 0.5) * W;
  cam.height = rng.uniform(cfg.camera_height_range[0], cfg.camera_height_range[1]);
  cam.distance_to_intersection =
      rng.uniform(cfg.camera_distance_range_in_h[0] * H, cfg.camera_distance_range_in_h[1] * H);
  cam.position = lateral(Direction::kSouth) * cam.lane_offset +
                 outward(Direction::kSouth) * cam.distance_to_intersection + kUp * cam.height;
  cam.look_at = {0.0, 0.0, 0.0};
  cam.vfov_degrees = cfg.vfov_degrees;

  // Sun, always above the road.
  const double azimuth = rng.uniform(0.0, 2.0 * kPi);
  const double elevation = deg_to_rad(rng.uniform(cfg.sun_elevation_range_degrees[0],
                                                  cfg.sun_elevation_range_degrees[1]));
  scene.sun_direction = {-std::cos(elevation) * std::sin(azimuth), -std::sin(elevation),
                         -std::cos(elevation) * std::cos(azimuth)};

  // Poles and lights, one cluster at the crossing end of every stretch.
  const TrafficLightDims& tl = cfg.traffic_light_dims;
  const PoleDims& pd = cfg.pole_dims;
  const double curb_margin = 0.3 * W;
  for (const RoadStretch& s : scene.stretches) {
    PoleSpec pole;
    pole.stretch = s.direction;
    pole.side = rng.bernoulli(0.5) ? Side::kRight : Side::kLeft;
    const double sign = pole.side == Side::kRight ? 1.0 : -1.0;
    const Vec3 out = outward(s.direction);
    const Vec3 lat = lateral(s.direction);
    pole.position = lat * (sign * (0.5 * s.width + curb_margin)) +
                    out * (s.intersection_offset + curb_margin);
    pole.has_extension = rng.bernoulli(cfg.extension_probability);
    pole.extension_direction = lat * -sign;
    int extension_lights = 0;
    bool axis_light = true;
    if (pole.has_extension) {
      pole.extension_length = rng.uniform(0.5, 1.0) * pd.extension_length;
      extension_lights = static_cast<int>(rng.uniform_int(1, 2));
      axis_light = rng.bernoulli(0.5);
    }
    if (axis_light) {
      const double y = pole.has_extension ? 0.65 * pd.axis_height
                                          : pd.axis_height - 0.5 * tl.body_height;
      const Vec3 pos = pole.position + kUp * y + out * (pd.radius + 0.5 * tl.body_depth);
      pole.mounted_lights.push_back(
          sample_light(rng, cfg, s.direction, LightMount::kPoleAxis, pos));
    }
    if (extension_lights > 0) {
      std::vector<LightMount> mounts;
      if (extension_lights == 2) {
        mounts = {LightMount::kExtensionSlot1, LightMount::kExtensionSlot2};
      } else {
        mounts = {rng.bernoulli(0.5) ? LightMount::kExtensionSlot1 : LightMount::kExtensionSlot2};
      }
      for (LightMount m : mounts) {
        const double along = (m == LightMount::kExtensionSlot1 ? 0.5 : 0.92) * pole.extension_length;
        const double y = pd.axis_height - pd.radius - 0.5 * tl.body_height;
        const Vec3 pos = pole.position + pole.extension_direction * along + kUp * y;
        pole.mounted_lights.push_back(sample_light(rng, cfg, s.direction, m, pos));
      }
    }
    scene.poles.push_back(std::move(pole));
  }

  // Boxes of the south lights, for the vehicle occlusion rule.
  const render::ImageSize size{cfg.image_width, cfg.image_height};
  std::vector<Rect> south_light_boxes;
  for (const PoleSpec& pole : scene.poles) {
    for (const TrafficLightSpec& light : pole.mounted_lights) {
      if (light.associated_stretch != Direction::kSouth) continue;
      if (auto box = render::project_light_face(light, tl, cam, size)) south_light_boxes.push_back(*box);
    }
  }

  // Vehicles.
  const VehicleDims& vd = cfg.vehicle_dims;
  for (const RoadStretch& s : scene.stretches) {
    const Vec3 out = outward(s.direction);
    const Vec3 lat = lateral(s.direction);
    const double v_min = s.intersection_offset + 0.5 * vd.length + 0.5 * W;
    double v_max = s.length - 0.5 * vd.length;
    if (s.direction == Direction::kSouth) {
      // Nothing at or behind the driver's position.
      v_max = std::min(v_max, cam.distance_to_intersection - 1.5 * vd.length);
    }
    for (int lane = 0; lane < s.lanes; ++lane) {
      const int count = static_cast<int>(rng.uniform_int(0, cfg.max_vehicles_per_lane));
      const double u = -0.5 * s.width + (lane + 0.5) * W;
      std::vector<double> placed;
      for (int k = 0; k < count; ++k) {
        const double v = rng.uniform(v_min, std::max(v_min, v_max));
        const Rgb color{static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                        static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                        static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
        if (v_max <= v_min) continue;
        const bool collides = std::any_of(placed.begin(), placed.end(), [&](double o) {
          return std::abs(o - v) < 1.3 * vd.length;
        });
        if (collides) continue;
        VehicleSpec veh;
        veh.stretch = s.direction;
        veh.lane_index = lane;
        veh.offset_along_lane = v;
        veh.position = lat * u + out * v;
        // Right-hand lanes approach the crossing.
        veh.heading = heading_of(u > 0.0 ? -out : out);
        veh.body_color = color;
        veh.bbox3d = oriented_box_corners(veh.position, veh.heading, vd);
        try {
          const Rect box = render::project_bbox3d(veh.bbox3d, cam, size);
          if (!filter_vehicle(box, south_light_boxes)) continue;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kBehindCamera) throw;
        }
        placed.push_back(v);
        scene.vehicles.push_back(veh);
      }
    }
  }
  return scene;
}

SceneGraph build_scene(std::uint64_t seed, const SceneConfig& cfg) {
  return SceneBuilder(cfg).build(seed);
}

}  // namespace synthlight::scenegen
