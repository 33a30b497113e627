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

#include "synthlight/render/scene_render.hpp"

#include <cmath>

#include "synthlight/render/labels.hpp"

namespace synthlight::render {
namespace {

using scenegen::Direction;
using scenegen::LightVariant;

constexpr Vec3 kUp{0.0, 1.0, 0.0};

Primitive make(PrimitiveKind kind, const Vec3& origin, const Vec3& ax, const Vec3& ay,
               const Vec3& az, const Material& m) {
  Primitive p;
  p.kind = kind;
  p.transform = {origin, ax, ay, az};
  p.material = m;
  return p;
}

Material diffuse(Rgb c) { return {c, false, 1.0}; }
Material emissive(Rgb c) { return {c, true, 1.0}; }

void append_stretch(const scenegen::RoadStretch& s, double lane_width, std::vector<Primitive>& out) {
  const Vec3 o = scenegen::outward(s.direction);
  const Vec3 lat = scenegen::lateral(s.direction);
  const double W = lane_width;
  // Slab whose top face is the road plane.
  out.push_back(make(PrimitiveKind::kBox, o * (0.5 * s.length) - kUp, lat * (0.5 * s.width), kUp,
                     o * (0.5 * s.length), diffuse(palette::kRoad)));

  const double a = s.intersection_offset;
  double markings_start = a + 0.2 * W;
  if (s.has_crosswalk) {
    const double band_center = a + 0.75 * W;
    for (double u = -0.5 * s.width + 0.2 * W; u < 0.5 * s.width - 0.1 * W; u += 0.45 * W) {
      out.push_back(make(PrimitiveKind::kBox, lat * u + o * band_center + kUp * 0.5, lat * (0.1 * W),
                         kUp * 0.5, o * (0.6 * W), diffuse(palette::kMarking)));
    }
    markings_start = a + 1.5 * W;
  }
  const double dash = 1.5 * W;
  for (int k = 1; k < s.lanes; ++k) {
    const double u = -0.5 * s.width + k * W;
    if (k == s.lanes / 2) {
      const double len = s.length - markings_start;
      if (len <= 0.0) continue;
      out.push_back(make(PrimitiveKind::kBox, lat * u + o * (markings_start + 0.5 * len) + kUp * 0.5,
                         lat * (0.03 * W), kUp * 0.5, o * (0.5 * len), diffuse(palette::kCenterLine)));
      continue;
    }
    for (double v = markings_start; v + dash <= s.length; v += 2.0 * dash) {
      out.push_back(make(PrimitiveKind::kBox, lat * u + o * (v + 0.5 * dash) + kUp * 0.5,
                         lat * (0.025 * W), kUp * 0.5, o * (0.5 * dash), diffuse(palette::kMarking)));
    }
  }
}

void append_pole(const scenegen::PoleSpec& pole, const scenegen::PoleDims& dims,
                 std::vector<Primitive>& out) {
  const double h = dims.axis_height;
  out.push_back(make(PrimitiveKind::kCylinder, pole.position + kUp * (0.5 * h),
                     Vec3{dims.radius, 0.0, 0.0}, kUp * (0.5 * h), Vec3{0.0, 0.0, dims.radius},
                     diffuse(palette::kPole)));
  if (pole.has_extension && pole.extension_length > 0.0) {
    const Vec3 dir = pole.extension_direction;
    const double r = 0.7 * dims.radius;
    out.push_back(make(PrimitiveKind::kCylinder,
                       pole.position + kUp * (h - r) + dir * (0.5 * pole.extension_length),
                       kUp * r, dir * (0.5 * pole.extension_length), cross(dir, kUp) * r,
                       diffuse(palette::kPole)));
  }
}

void append_timer(const scenegen::LightFrame& f, const Vec3& bulb, double radius,
                  const std::array<bool, scenegen::kTimerSegments>& mask, Rgb tone,
                  std::vector<Primitive>& out) {
  const double dw = 0.42 * radius;
  const double dh = 0.9 * radius;
  const double t = 0.14 * radius;
  const Vec3 plane = bulb + f.forward * (0.35 * radius);
  for (int digit = 0; digit < 2; ++digit) {
    const Vec3 c = plane + f.right * ((digit == 0 ? -0.33 : 0.33) * radius);
    // Top, middle, bottom, left, right.
    const std::array<Vec3, 5> centers = {c + f.up * (0.5 * dh), c, c - f.up * (0.5 * dh),
                                         c - f.right * (0.5 * dw), c + f.right * (0.5 * dw)};
    for (int s = 0; s < 5; ++s) {
      const bool horizontal = s < 3;
      const bool lit = mask[static_cast<std::size_t>(digit * 5 + s)];
      out.push_back(make(PrimitiveKind::kBox, centers[s],
                         f.right * (horizontal ? 0.5 * dw : 0.5 * t),
                         f.up * (horizontal ? 0.5 * t : 0.5 * dh), f.forward * (0.5 * t),
                         lit ? emissive(tone) : diffuse(palette::kSegmentOff)));
    }
  }
}

void append_arrow(const scenegen::LightFrame& f, const Vec3& bulb, double radius, bool left,
                  Rgb tone, std::vector<Primitive>& out) {
  const double sign = left ? -1.0 : 1.0;
  const Vec3 plane = bulb + f.forward * (0.35 * radius);
  const double t = 0.14 * radius;
  out.push_back(make(PrimitiveKind::kBox, plane, f.right * (0.55 * radius), f.up * t,
                     f.forward * t, emissive(tone)));
  const Vec3 tip = plane + f.right * (sign * 0.55 * radius);
  const double arm = 0.28 * radius;
  const double k = std::sqrt(0.5);
  for (double vs : {1.0, -1.0}) {
    const Vec3 dir = f.right * (-sign * k) + f.up * (vs * k);
    const Vec3 perp = f.right * (sign * vs * k) + f.up * k;
    out.push_back(make(PrimitiveKind::kBox, tip + dir * arm, dir * arm, perp * t, f.forward * t,
                       emissive(tone)));
  }
}

void append_vehicle(const scenegen::VehicleSpec& v, const scenegen::VehicleDims& dims,
                    const scenegen::TriangleMesh& mesh, std::vector<Primitive>& out) {
  const Vec3 fwd{std::sin(v.heading), 0.0, std::cos(v.heading)};
  const Vec3 side = cross(kUp, fwd);
  out.push_back(make(PrimitiveKind::kEllipseDisc, v.position + kUp * 2.0, side * (0.62 * dims.width),
                     kUp, fwd * (0.6 * dims.length), emissive(palette::kShadow)));
  Primitive body = make(PrimitiveKind::kTriangleMesh, v.position, side, kUp, fwd, diffuse(v.body_color));
  body.mesh = &mesh;
  out.push_back(body);
  const Vec3 rear = v.position - fwd * (0.5 * dims.length + 0.02 * dims.length);
  for (double s : {-1.0, 1.0}) {
    const Vec3 c = rear + side * (s * 0.33 * dims.width) + kUp * (0.45 * dims.height);
    out.push_back(make(PrimitiveKind::kBox, c, side * (0.05 * dims.width), kUp * (0.03 * dims.height),
                       fwd * (0.012 * dims.length), emissive(palette::kTailCore)));
    out.push_back(make(PrimitiveKind::kBox, c, side * (0.1 * dims.width), kUp * (0.06 * dims.height),
                       fwd * (0.025 * dims.length),
                       {palette::kTailShell, false, palette::kTailShellAlpha}));
  }
}

}  // namespace

void append_light_primitives(const scenegen::TrafficLightSpec& light,
                             const scenegen::TrafficLightDims& dims, std::vector<Primitive>& out) {
  const scenegen::LightFrame f = scenegen::light_frame(light);
  out.push_back(make(PrimitiveKind::kBox, f.center, f.right * (0.5 * dims.body_width),
                     f.up * (0.5 * dims.body_height), f.forward * (0.5 * dims.body_depth),
                     diffuse(palette::kLightBody)));
  const auto bulbs = scenegen::bulb_centers(light, dims);
  const int lit = static_cast<int>(state_index(light.state));
  const double R = dims.bulb_radius;
  const Material shell{palette::kBulbShell, false, palette::kShellAlpha};
  for (int i = 0; i < 3; ++i) {
    const Vec3& c = bulbs[static_cast<std::size_t>(i)];
    auto sphere = [&](const Material& m) {
      out.push_back(make(PrimitiveKind::kSphere, c, f.right * R, f.up * R, f.forward * R, m));
    };
    switch (light.variant) {
      case LightVariant::kFullBulb:
        sphere(i == lit ? emissive(light.emitted_tone) : diffuse(palette::kBulbOff));
        break;
      case LightVariant::kTimer:
        // The timer sits in the middle bulb; for yellow it is the lit indicator.
        if (i == 1 && light.timer_segment_mask) {
          append_timer(f, c, R, *light.timer_segment_mask, light.emitted_tone, out);
          sphere(shell);
        } else {
          sphere(i == lit ? emissive(light.emitted_tone) : diffuse(palette::kBulbOff));
        }
        break;
      case LightVariant::kArrowLeft:
      case LightVariant::kArrowRight:
        if (i == lit) {
          append_arrow(f, c, R, light.variant == LightVariant::kArrowLeft, light.emitted_tone, out);
          sphere(shell);
        } else {
          sphere(diffuse(palette::kBulbOff));
        }
        break;
    }
    Primitive visor = make(PrimitiveKind::kCylinderSegment, c + f.forward * (0.5 * dims.visor_length),
                           f.right * (1.2 * R), f.forward * (0.5 * dims.visor_length),
                           f.up * (1.2 * R), diffuse(palette::kLightBody));
    visor.arc_begin = -0.1 * kPi;
    visor.arc_end = 1.1 * kPi;
    out.push_back(visor);
  }
}

std::vector<Primitive> build_primitives(const scenegen::SceneGraph& scene,
                                        const scenegen::SceneConfig& cfg,
                                        const scenegen::TriangleMesh& vehicle_mesh,
                                        ForegroundContent content) {
  std::vector<Primitive> out;
  const bool full = content == ForegroundContent::kFullScene;
  if (full) {
    for (const auto& s : scene.stretches) append_stretch(s, cfg.lane_width, out);
    for (const auto& v : scene.vehicles) append_vehicle(v, cfg.vehicle_dims, vehicle_mesh, out);
  }
  for (const auto& pole : scene.poles) {
    if (full) append_pole(pole, cfg.pole_dims, out);
    for (const auto& light : pole.mounted_lights) {
      append_light_primitives(light, cfg.traffic_light_dims, out);
    }
  }
  return out;
}

ForegroundRender render_foreground(const scenegen::SceneGraph& scene,
                                   const scenegen::SceneBuilder& builder,
                                   ForegroundContent content) {
  const auto& cfg = builder.config();
  const std::vector<Primitive> prims = build_primitives(scene, cfg, builder.vehicle_mesh(), content);
  ForegroundRender fg;
  fg.pixels = rasterize(std::span<const Primitive>(prims), scene.camera, scene.sun_direction,
                        {scene.image_width, scene.image_height});
  fg.labels = label_lights(scene, scene.camera, cfg.traffic_light_dims);
  fg.scene_seed = scene.seed;
  return fg;
}

}  // namespace synthlight::render
