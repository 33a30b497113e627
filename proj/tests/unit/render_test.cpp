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

#include <cmath>

#include "doctest.h"
#include "synthlight/core/rng.hpp"
#include "synthlight/render/labels.hpp"
#include "synthlight/render/projection.hpp"
#include "synthlight/render/rasterizer.hpp"
#include "synthlight/render/scene_render.hpp"
#include "synthlight/scenegen/scene_builder.hpp"

namespace sg = synthlight::scenegen;
namespace rd = synthlight::render;
using synthlight::Error;
using synthlight::ErrorCode;
using synthlight::LightState;
using synthlight::Rect;
using synthlight::Vec3;

namespace {

constexpr rd::ImageSize kSize{640, 480};

// Camera at the origin looking along +z.
sg::CameraSpec forward_camera(double vfov = 60.0) {
  sg::CameraSpec cam;
  cam.position = {0.0, 0.0, 0.0};
  cam.look_at = {0.0, 0.0, 1000.0};
  cam.vfov_degrees = vfov;
  return cam;
}

double focal(double vfov = 60.0) { return 0.5 * kSize.height / std::tan(synthlight::deg_to_rad(0.5 * vfov)); }

// A light facing the forward camera, its front face at depth `depth`.
sg::TrafficLightSpec facing_light(double x, double y, double depth, LightState state,
                                  const sg::TrafficLightDims& dims = {}) {
  sg::TrafficLightSpec light;
  light.state = state;
  light.position = {x, y, depth + 0.5 * dims.body_depth};
  light.yaw = synthlight::kPi;  // front face normal points to -z
  light.emitted_tone = {255, 30, 20};
  return light;
}

sg::SceneGraph scene_with(std::vector<sg::PoleSpec> poles) {
  sg::SceneGraph scene;
  scene.camera = forward_camera();
  scene.poles = std::move(poles);
  scene.sun_direction = {0.0, -1.0, 0.0};
  return scene;
}

sg::PoleSpec pole_with(sg::Direction d, std::vector<sg::TrafficLightSpec> lights) {
  sg::PoleSpec pole;
  pole.stretch = d;
  for (auto& l : lights) l.associated_stretch = d;
  pole.mounted_lights = std::move(lights);
  return pole;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("points on the optical axis project to the image center") {
  for (double d : {1.0, 50.0, 1e4}) {
    const rd::Pixel p = rd::project({0.0, 0.0, d}, forward_camera(), kSize);
    CHECK(p.x == doctest::Approx(320.0));
    CHECK(p.y == doctest::Approx(240.0));
  }
}

TEST_CASE("a point at half the vertical field of view lands on the top edge") {
  const double d = 700.0;
  const rd::Pixel p = rd::project({0.0, d * std::tan(synthlight::deg_to_rad(30.0)), d}, forward_camera(), kSize);
  CHECK(p.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.x == doctest::Approx(320.0));
}

TEST_CASE("lateral offsets scale linearly at fixed depth") {
  const auto cam = forward_camera();
  const rd::Pixel a = rd::project({40.0, -25.0, 900.0}, cam, kSize);
  const rd::Pixel b = rd::project({80.0, -50.0, 900.0}, cam, kSize);
  CHECK(b.x - 320.0 == doctest::Approx(2.0 * (a.x - 320.0)));
  CHECK(b.y - 240.0 == doctest::Approx(2.0 * (a.y - 240.0)));
}

TEST_CASE("projection matches the closed-form pinhole model for a tilted camera") {
  sg::CameraSpec cam;
  cam.position = {300.0, 250.0, 9000.0};
  cam.look_at = {0.0, 0.0, 0.0};
  cam.vfov_degrees = 60.0;
  // Independent look-at basis.
  const Vec3 fwd = synthlight::normalized(cam.look_at - cam.position);
  const Vec3 right = synthlight::normalized(synthlight::cross({0.0, 1.0, 0.0}, fwd));
  const Vec3 up = synthlight::cross(fwd, right);
  synthlight::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Vec3 p{rng.uniform(-2000, 2000), rng.uniform(0, 2000), rng.uniform(-3000, 3000)};
    const Vec3 rel = p - cam.position;
    const double z = synthlight::dot(rel, fwd);
    const double px = 320.0 + focal() * synthlight::dot(rel, right) / z;
    const double py = 240.0 - focal() * synthlight::dot(rel, up) / z;
    const rd::Pixel got = rd::project(p, cam, kSize);
    CHECK(got.x == doctest::Approx(px).epsilon(1e-9));
    CHECK(got.y == doctest::Approx(py).epsilon(1e-9));
  }
}

TEST_CASE("points behind the camera are rejected") {
  try {
    rd::project({0.0, 0.0, -5.0}, forward_camera(), kSize);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBehindCamera);
  }
  CHECK_THROWS_AS(rd::project({1.0, 1.0, 0.0}, forward_camera(), kSize), Error);
}

TEST_CASE("a cube on the optical axis projects to a centered square") {
  std::vector<Vec3> cube;
  for (double x : {-1.0, 1.0})
    for (double y : {-1.0, 1.0})
      for (double z : {99.0, 101.0}) cube.push_back({x, y, z});
  const Rect r = rd::project_bbox3d(cube, forward_camera(), kSize);
  CHECK(r.center_x() == doctest::Approx(320.0));
  CHECK(r.center_y() == doctest::Approx(240.0));
  CHECK(r.width() == doctest::Approx(r.height()));
  CHECK(r.width() == doctest::Approx(2.0 * focal() / 99.0));
}

TEST_CASE("the 3D hull equals the hull of the individually projected corners") {
  sg::CameraSpec cam;
  cam.position = {100.0, 200.0, 6000.0};
  cam.look_at = {0.0, 0.0, 0.0};
  const auto corners = sg::oriented_box_corners({-400.0, 0.0, 2500.0}, 0.7, sg::VehicleDims{});
  Rect hull{1e300, 1e300, -1e300, -1e300};
  for (const Vec3& c : corners) {
    const rd::Pixel p = rd::project(c, cam, kSize);
    hull = {std::min(hull.x_min, p.x), std::min(hull.y_min, p.y), std::max(hull.x_max, p.x),
            std::max(hull.y_max, p.y)};
  }
  const Rect r = rd::project_bbox3d(corners, cam, kSize);
  CHECK(r.x_min == doctest::Approx(hull.x_min));
  CHECK(r.y_min == doctest::Approx(hull.y_min));
  CHECK(r.x_max == doctest::Approx(hull.x_max));
  CHECK(r.y_max == doctest::Approx(hull.y_max));

  // The camera looks roughly along -z, so world -x is image right.
  std::vector<Vec3> moved;
  for (const Vec3& c : corners) moved.push_back(c + Vec3{-150.0, 0.0, 0.0});
  const Rect m = rd::project_bbox3d(moved, cam, kSize);
  CHECK(m.x_min > r.x_min);
  CHECK(m.x_max > r.x_max);
}

TEST_CASE("a box entirely behind the camera is rejected") {
  std::vector<Vec3> behind{{0, 0, -10}, {1, 1, -20}};
  CHECK_THROWS_AS(rd::project_bbox3d(behind, forward_camera(), kSize), Error);
}

TEST_CASE("an empty scene rasterizes to full transparency") {
  const std::vector<rd::Primitive> none;
  const auto img = rd::rasterize(std::span<const rd::Primitive>(none), forward_camera(), {0, -1, 0}, kSize);
  CHECK(img.width() == 640);
  CHECK(img.channels() == 4);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) REQUIRE(img.at(x, y, 3) == 0);
}

TEST_CASE("emissive color ignores the sun while diffuse color does not") {
  rd::Primitive bulb;
  bulb.kind = rd::PrimitiveKind::kSphere;
  bulb.transform.origin = {0.0, 0.0, 1000.0};
  bulb.transform.axis_x = {100.0, 0.0, 0.0};
  bulb.transform.axis_y = {0.0, 100.0, 0.0};
  bulb.transform.axis_z = {0.0, 0.0, 100.0};
  bulb.material = {{230, 20, 10}, true, 1.0};
  rd::Primitive body = bulb;
  body.transform.origin = {400.0, 0.0, 1000.0};
  body.material = {{120, 120, 120}, false, 1.0};
  const std::vector<rd::Primitive> prims{bulb, body};
  const auto a = rd::rasterize(std::span<const rd::Primitive>(prims), forward_camera(),
                               synthlight::normalized({0.3, -1.0, 0.2}), kSize);
  const auto b = rd::rasterize(std::span<const rd::Primitive>(prims), forward_camera(),
                               synthlight::normalized({-0.8, -0.4, 0.9}), kSize);
  // Disc of the bulb tone at the center.
  CHECK(a.at(320, 240, 0) == 230);
  CHECK(a.at(320, 240, 1) == 20);
  CHECK(a.at(320, 240, 2) == 10);
  CHECK(a.at(320, 240, 3) == 255);
  bool emissive_equal = true, diffuse_differs = false;
  for (int y = 0; y < 480; ++y) {
    for (int x = 0; x < 640; ++x) {
      if (a.at(x, y, 3) == 0) continue;
      const bool on_bulb = x < 320 + 60 && x > 320 - 60;
      const bool same = a.at(x, y, 0) == b.at(x, y, 0) && a.at(x, y, 1) == b.at(x, y, 1);
      if (on_bulb && !same) emissive_equal = false;
      if (x > 420 && !same) diffuse_differs = true;
    }
  }
  CHECK(emissive_equal);
  CHECK(diffuse_differs);
  CHECK(a.at(0, 0, 3) == 0);
}

TEST_CASE("rendering the same scene twice is bit identical") {
  const sg::SceneBuilder builder{sg::SceneConfig{}};
  const auto scene = builder.build(11);
  const auto a = rd::render_foreground(scene, builder);
  const auto b = rd::render_foreground(scene, builder);
  CHECK(a.pixels == b.pixels);
  CHECK(a.labels == b.labels);
}

TEST_CASE("alpha is binary unless a translucent shell covers empty space") {
  rd::Primitive solid;
  solid.kind = rd::PrimitiveKind::kBox;
  solid.transform.origin = {-300.0, 0.0, 1500.0};
  solid.transform.axis_x = {150.0, 0.0, 0.0};
  solid.transform.axis_y = {0.0, 150.0, 0.0};
  solid.transform.axis_z = {0.0, 0.0, 150.0};
  solid.material = {{90, 90, 90}, false, 1.0};
  rd::Primitive shell = solid;
  shell.kind = rd::PrimitiveKind::kSphere;
  shell.material = {{36, 36, 38}, false, 0.35};
  // One shell over the box, one over nothing.
  rd::Primitive over_box = shell;
  over_box.transform.origin = {-300.0, 0.0, 1200.0};
  over_box.transform.axis_x = {60.0, 0.0, 0.0};
  over_box.transform.axis_y = {0.0, 60.0, 0.0};
  over_box.transform.axis_z = {0.0, 0.0, 60.0};
  rd::Primitive over_void = over_box;
  over_void.transform.origin = {300.0, 0.0, 1200.0};

  const std::vector<rd::Primitive> opaque{solid};
  const auto a = rd::rasterize(std::span<const rd::Primitive>(opaque), forward_camera(), {0, -1, 0}, kSize);
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x) REQUIRE((a.at(x, y, 3) == 0 || a.at(x, y, 3) == 255));

  const std::vector<rd::Primitive> mixed{solid, over_box, over_void};
  const auto b = rd::rasterize(std::span<const rd::Primitive>(mixed), forward_camera(), {0, -1, 0}, kSize);
  const auto box_px = rd::project({-300.0, 0.0, 1140.0}, forward_camera(), kSize);
  const auto void_px = rd::project({300.0, 0.0, 1140.0}, forward_camera(), kSize);
  CHECK(b.at(int(box_px.x), int(box_px.y), 3) == 255);
  CHECK(b.at(int(void_px.x), int(void_px.y), 3) == synthlight::clamp_u8(0.35 * 255.0));
  CHECK(b.at(600, 20, 3) == 0);
}

TEST_CASE("a fully visible south light is labeled with its face hull") {
  const sg::TrafficLightDims dims;
  auto light = facing_light(150.0, 80.0, 3000.0, LightState::kGreen);
  const auto scene = scene_with({pole_with(sg::Direction::kSouth, {light})});
  const auto labels = rd::label_lights(scene, scene.camera, dims);
  REQUIRE(labels.size() == 1);
  const double f = focal();
  const double depth = 3000.0;
  CHECK(labels[0].state == LightState::kGreen);
  CHECK(labels[0].box.x_min == doctest::Approx(320.0 + f * (150.0 - 50.0) / depth));
  CHECK(labels[0].box.x_max == doctest::Approx(320.0 + f * (150.0 + 50.0) / depth));
  CHECK(labels[0].box.y_min == doctest::Approx(240.0 - f * (80.0 + 130.0) / depth));
  CHECK(labels[0].box.y_max == doctest::Approx(240.0 - f * (80.0 - 130.0) / depth));
}

TEST_CASE("a light mostly beyond the left edge is not labeled") {
  const sg::TrafficLightDims dims;
  const double depth = 3000.0;
  const double w_px = focal() * dims.body_width / depth;
  // Pixel center chosen so 60% of the box lies at x < 0.
  auto light_at = [&](double share_outside) {
    const double cx_px = w_px * (0.5 - share_outside);
    return facing_light((cx_px - 320.0) * depth / focal(), 0.0, depth, LightState::kRed);
  };
  const auto out60 = scene_with({pole_with(sg::Direction::kSouth, {light_at(0.6)})});
  CHECK(rd::label_lights(out60, out60.camera, dims).empty());
  const auto out40 = scene_with({pole_with(sg::Direction::kSouth, {light_at(0.4)})});
  const auto kept = rd::label_lights(out40, out40.camera, dims);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].box.x_min == 0.0);
  CHECK(kept[0].box.x_max == doctest::Approx(0.6 * w_px));
}

TEST_CASE("lights of other stretches are never labeled") {
  const sg::TrafficLightDims dims;
  const auto light = facing_light(0.0, 0.0, 3000.0, LightState::kYellow);
  for (auto d : {sg::Direction::kWest, sg::Direction::kNorth, sg::Direction::kEast}) {
    const auto scene = scene_with({pole_with(d, {light})});
    CHECK(rd::label_lights(scene, scene.camera, dims).empty());
  }
}

TEST_CASE("fraction inside measures the in-frame share") {
  CHECK(rd::fraction_inside({-10, 0, 10, 10}, kSize) == doctest::Approx(0.5));
  CHECK(rd::fraction_inside({10, 10, 20, 20}, kSize) == doctest::Approx(1.0));
  CHECK(rd::fraction_inside({700, 10, 720, 20}, kSize) == 0.0);
  CHECK(rd::fraction_inside({5, 5, 5, 9}, kSize) == 0.0);
}

TEST_CASE("labels of sampled scenes are ordered, in frame, and show a lit bulb") {
  const sg::SceneConfig cfg;
  const sg::SceneBuilder builder{cfg};
  const auto& dims = cfg.traffic_light_dims;
  std::size_t labels = 0, checked = 0, lit = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto scene = builder.build(synthlight::derive_seed(1, seed, 1));
    // Lights only, so that roads, poles and vehicles cannot cover a bulb.
    const auto fg = rd::render_foreground(scene, builder, rd::ForegroundContent::kLightsOnly);
    std::vector<synthlight::Rgb> tones[3];
    std::vector<Rect> extents;  // whole body plus visors, per light
    std::vector<sg::LightVariant> variants;
    for (const auto& pole : scene.poles) {
      for (const auto& l : pole.mounted_lights) {
        tones[synthlight::state_index(l.state)].push_back(l.emitted_tone);
        const auto f = sg::light_frame(l);
        std::vector<Vec3> pts;
        for (const Vec3& c : sg::front_face_corners(l, dims)) {
          pts.push_back(c + f.forward * dims.visor_length);
          pts.push_back(c - f.forward * dims.body_depth);
        }
        try {
          extents.push_back(rd::project_bbox3d(pts, scene.camera, kSize));
          variants.push_back(l.variant);
        } catch (const Error&) {
        }
      }
    }
    for (const auto& lb : fg.labels) {
      ++labels;
      REQUIRE(lb.box.x_min < lb.box.x_max);
      REQUIRE(lb.box.y_min < lb.box.y_max);
      REQUIRE(lb.box.x_min >= 0.0);
      REQUIRE(lb.box.y_min >= 0.0);
      REQUIRE(lb.box.x_max <= 640.0);
      REQUIRE(lb.box.y_max <= 480.0);
      // Lights overlapping on screen may hide each other; only the label's own
      // light is allowed to overlap its box.
      std::size_t overlapping = 0;
      sg::LightVariant variant = sg::LightVariant::kFullBulb;
      for (std::size_t e = 0; e < extents.size(); ++e) {
        const Rect& r = extents[e];
        if (r.x_min < lb.box.x_max && lb.box.x_min < r.x_max && r.y_min < lb.box.y_max && lb.box.y_min < r.y_max) {
          ++overlapping;
          variant = variants[e];
        }
      }
      if (overlapping > 1) continue;
      // Timer and arrow strokes are 0.28 R thick; below one pixel they can fall
      // between pixel centers.
      const double stroke_px = lb.box.height() * 0.28 * dims.bulb_radius / dims.body_height;
      if (variant != sg::LightVariant::kFullBulb && stroke_px < 1.0) continue;
      ++checked;
      // A pixel in the box carrying the tone, directly or through a shaded bulb shell.
      const auto& candidates = tones[synthlight::state_index(lb.state)];
      bool found = false;
      for (int y = int(lb.box.y_min); y < int(std::ceil(lb.box.y_max)) && !found; ++y) {
        for (int x = int(lb.box.x_min); x < int(std::ceil(lb.box.x_max)) && !found; ++x) {
          for (const auto& t : candidates) {
            auto near = [&](int c, int v) {
              const int shell = c == 0 ? rd::palette::kBulbShell.r : c == 1 ? rd::palette::kBulbShell.g
                                                                           : rd::palette::kBulbShell.b;
              // The shell is diffuse, so its own shade lies anywhere in [0, shell].
              const double base = (1 - rd::palette::kShellAlpha) * v;
              const int px = fg.pixels.at(x, y, c);
              return px == v || (px >= base - 1.0 && px <= base + rd::palette::kShellAlpha * shell + 1.0);
            };
            if (near(0, t.r) && near(1, t.g) && near(2, t.b)) {
              found = true;
              break;
            }
          }
        }
      }
      lit += found;
    }
  }
  CHECK(labels > 0);
  CHECK(checked >= 20);
  CHECK(lit == checked);
}

TEST_CASE("lights-only foregrounds keep the labels and drop the road") {
  const sg::SceneBuilder builder{sg::SceneConfig{}};
  const auto scene = builder.build(21);
  const auto full = rd::render_foreground(scene, builder);
  const auto lights = rd::render_foreground(scene, builder, rd::ForegroundContent::kLightsOnly);
  CHECK(full.labels == lights.labels);
  std::size_t full_px = 0, light_px = 0;
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x) {
      full_px += full.pixels.at(x, y, 3) != 0;
      light_px += lights.pixels.at(x, y, 3) != 0;
    }
  CHECK(light_px < full_px);
  CHECK(light_px > 0);
}

}  // TEST_SUITE
