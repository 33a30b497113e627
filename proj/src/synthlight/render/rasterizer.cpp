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

#include "synthlight/render/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace synthlight::render {
namespace {

struct ScreenVertex {
  double x;
  double y;
  double inv_z;
};

struct FrameBuffers {
  int width;
  int height;
  std::vector<double> color;  // 3 per pixel
  std::vector<double> alpha;  // [0,1]
  std::vector<double> inv_depth;

  FrameBuffers(int w, int h)
      : width(w),
        height(h),
        color(static_cast<std::size_t>(w) * h * 3, 0.0),
        alpha(static_cast<std::size_t>(w) * h, 0.0),
        inv_depth(static_cast<std::size_t>(w) * h, 0.0) {}
};

double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// Pixels exactly on a shared edge belong to one triangle only.
bool top_left(const ScreenVertex& a, const ScreenVertex& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return dy < 0.0 || (dy == 0.0 && dx > 0.0);
}

void fill_triangle(FrameBuffers& fb, ScreenVertex a, ScreenVertex b, ScreenVertex c,
                   const std::array<double, 3>& rgb, double alpha, bool translucent) {
  double area = edge(a, b, c.x, c.y);
  if (std::abs(area) < 1e-12) return;
  if (area < 0.0) {
    std::swap(b, c);
    area = -area;
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
  const int x1 = std::min(fb.width - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
  const int y1 = std::min(fb.height - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
  if (x0 > x1 || y0 > y1) return;
  const bool tl0 = top_left(b, c);
  const bool tl1 = top_left(c, a);
  const bool tl2 = top_left(a, b);
  const double inv_area = 1.0 / area;
  for (int y = y0; y <= y1; ++y) {
    const double py = y + 0.5;
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double w0 = edge(b, c, px, py);
      const double w1 = edge(c, a, px, py);
      const double w2 = edge(a, b, px, py);
      if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
      if ((w0 == 0.0 && !tl0) || (w1 == 0.0 && !tl1) || (w2 == 0.0 && !tl2)) continue;
      const double inv_z = (w0 * a.inv_z + w1 * b.inv_z + w2 * c.inv_z) * inv_area;
      const std::size_t idx = static_cast<std::size_t>(y) * fb.width + x;
      if (!(inv_z > fb.inv_depth[idx])) continue;
      double* dst = &fb.color[idx * 3];
      if (translucent) {
        for (int k = 0; k < 3; ++k) dst[k] = alpha * rgb[k] + (1.0 - alpha) * dst[k];
        fb.alpha[idx] = alpha + (1.0 - alpha) * fb.alpha[idx];
      } else {
        fb.inv_depth[idx] = inv_z;
        for (int k = 0; k < 3; ++k) dst[k] = rgb[k];
        fb.alpha[idx] = 1.0;
      }
    }
  }
}

// Clips a camera-space triangle against z >= near and returns the polygon.
int clip_near(const std::array<Vec3, 3>& in, double near, std::array<Vec3, 4>& out) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const Vec3& cur = in[i];
    const Vec3& nxt = in[(i + 1) % 3];
    const bool cur_in = cur.z >= near;
    const bool nxt_in = nxt.z >= near;
    if (cur_in) out[n++] = cur;
    if (cur_in != nxt_in) {
      const double t = (near - cur.z) / (nxt.z - cur.z);
      out[n++] = cur + (nxt - cur) * t;
    }
  }
  return n;
}

struct PreparedTriangle {
  std::array<Vec3, 3> cam;
  std::array<double, 3> rgb;
  double alpha;
  double sort_depth;
};

}  // namespace

Image rasterize(std::span<const Triangle> triangles, const scenegen::CameraSpec& camera,
                const Vec3& sun_direction, ImageSize size, const ShadingOptions& opts) {
  const PinholeCamera cam(camera, size);
  const Vec3 to_sun = normalized(-sun_direction);
  FrameBuffers fb(size.width, size.height);

  std::vector<PreparedTriangle> opaque;
  std::vector<PreparedTriangle> translucent;
  opaque.reserve(triangles.size());
  for (const Triangle& t : triangles) {
    const double alpha = std::clamp(t.material.alpha, 0.0, 1.0);
    if (alpha <= 0.0) continue;
    const Vec3 geometric = face_normal(t);
    const Vec3 view = cam.position() - t.v[0];
    const bool facing = dot(geometric, view) > 0.0;
    const bool is_translucent = alpha < 1.0;
    if (is_translucent && t.closed && !facing) continue;
    std::array<double, 3> rgb{static_cast<double>(t.material.diffuse.r),
                              static_cast<double>(t.material.diffuse.g),
                              static_cast<double>(t.material.diffuse.b)};
    if (!t.material.emissive) {
      Vec3 n = normalized(geometric);
      if (!facing) n = -n;
      const double lambert = std::max(0.0, dot(n, to_sun));
      const double intensity = opts.ambient + (1.0 - opts.ambient) * lambert;
      for (double& ch : rgb) ch *= intensity;
    }
    PreparedTriangle p{{cam.to_camera(t.v[0]), cam.to_camera(t.v[1]), cam.to_camera(t.v[2])},
                       rgb, alpha, 0.0};
    if (p.cam[0].z < opts.near_plane && p.cam[1].z < opts.near_plane &&
        p.cam[2].z < opts.near_plane) {
      continue;
    }
    p.sort_depth = (p.cam[0].z + p.cam[1].z + p.cam[2].z) / 3.0;
    (is_translucent ? translucent : opaque).push_back(p);
  }
  // Far to near; stable so equal depths keep submission order.
  std::stable_sort(translucent.begin(), translucent.end(),
                   [](const PreparedTriangle& a, const PreparedTriangle& b) {
                     return a.sort_depth > b.sort_depth;
                   });

  auto draw = [&](const PreparedTriangle& p, bool blend) {
    std::array<Vec3, 4> poly;
    const int n = clip_near(p.cam, opts.near_plane, poly);
    if (n < 3) return;
    std::array<ScreenVertex, 4> sv;
    for (int i = 0; i < n; ++i) {
      const Pixel px = cam.project_camera(poly[i]);
      sv[i] = {px.x, px.y, 1.0 / poly[i].z};
    }
    for (int i = 1; i + 1 < n; ++i) fill_triangle(fb, sv[0], sv[i], sv[i + 1], p.rgb, p.alpha, blend);
  };
  for (const auto& p : opaque) draw(p, false);
  for (const auto& p : translucent) draw(p, true);

  Image out(size.width, size.height, 4, 0);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * size.width + x;
      for (int k = 0; k < 3; ++k) out.at(x, y, k) = clamp_u8(fb.color[idx * 3 + k]);
      out.at(x, y, 3) = clamp_u8(fb.alpha[idx] * 255.0);
    }
  }
  return out;
}

Image rasterize(std::span<const Primitive> primitives, const scenegen::CameraSpec& camera,
                const Vec3& sun_direction, ImageSize size, const ShadingOptions& opts) {
  std::vector<Triangle> triangles;
  for (const Primitive& p : primitives) tessellate(p, triangles);
  return rasterize(std::span<const Triangle>(triangles), camera, sun_direction, size, opts);
}

}  // namespace synthlight::render
