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

#include "synthlight/datasets/templates.hpp"

#include <cmath>

#include "synthlight/render/scene_render.hpp"
#include "synthlight/scenegen/scene_builder.hpp"

namespace synthlight::datasets {
namespace {

// Rectangle of half extents (hx, hy) around (cx, cy) rotated so its first axis
// points along (dx, dy) (unit length).
bool in_oriented_rect(double px, double py, double cx, double cy, double dx, double dy, double hx,
                      double hy) {
  const double lx = px - cx;
  const double ly = py - cy;
  const double a = lx * dx + ly * dy;
  const double b = -lx * dy + ly * dx;
  return std::abs(a) <= hx && std::abs(b) <= hy;
}

struct Homography {
  // x = (a u + b v + c) / (g u + h v + 1), y = (d u + e v + f) / (g u + h v + 1)
  std::array<double, 9> m{};

  static Homography unit_square_to(const std::array<Point2, 4>& q) {
    // Corners map from (0,0), (1,0), (1,1), (0,1).
    const double sx = q[0].x - q[1].x + q[2].x - q[3].x;
    const double sy = q[0].y - q[1].y + q[2].y - q[3].y;
    Homography hm;
    auto& m = hm.m;
    if (std::abs(sx) < 1e-12 && std::abs(sy) < 1e-12) {
      m = {q[1].x - q[0].x, q[3].x - q[0].x, q[0].x, q[1].y - q[0].y, q[3].y - q[0].y, q[0].y,
           0.0, 0.0, 1.0};
      return hm;
    }
    const double dx1 = q[1].x - q[2].x;
    const double dx2 = q[3].x - q[2].x;
    const double dy1 = q[1].y - q[2].y;
    const double dy2 = q[3].y - q[2].y;
    const double den = dx1 * dy2 - dx2 * dy1;
    const double g = (sx * dy2 - dx2 * sy) / den;
    const double h = (dx1 * sy - sx * dy1) / den;
    m = {q[1].x - q[0].x + g * q[1].x, q[3].x - q[0].x + h * q[3].x, q[0].x,
         q[1].y - q[0].y + g * q[1].y, q[3].y - q[0].y + h * q[3].y, q[0].y,
         g, h, 1.0};
    return hm;
  }

  Homography inverse() const {
    const auto& a = m;
    Homography inv;
    auto& r = inv.m;
    r[0] = a[4] * a[8] - a[5] * a[7];
    r[1] = a[2] * a[7] - a[1] * a[8];
    r[2] = a[1] * a[5] - a[2] * a[4];
    r[3] = a[5] * a[6] - a[3] * a[8];
    r[4] = a[0] * a[8] - a[2] * a[6];
    r[5] = a[2] * a[3] - a[0] * a[5];
    r[6] = a[3] * a[7] - a[4] * a[6];
    r[7] = a[1] * a[6] - a[0] * a[7];
    r[8] = a[0] * a[4] - a[1] * a[3];
    return inv;
  }

  Point2 apply(double x, double y) const {
    const double w = m[6] * x + m[7] * y + m[8];
    return {(m[0] * x + m[1] * y + m[2]) / w, (m[3] * x + m[4] * y + m[5]) / w};
  }
};

}  // namespace

TemplateSpec sample_template_spec(Rng& rng, LightState state) {
  TemplateSpec spec;
  spec.state = state;
  spec.variant = static_cast<TemplateVariant>(rng.uniform_int(0, 2));
  spec.tone = scenegen::sample_state_tone(rng, state);
  if (spec.variant == TemplateVariant::kArrow) spec.arrow_left = rng.bernoulli(0.5);
  if (spec.variant == TemplateVariant::kTimer) {
    bool any = false;
    for (auto& s : spec.timer_mask) any |= (s = rng.bernoulli(0.5));
    if (!any) spec.timer_mask[static_cast<std::size_t>(rng.uniform_int(0, scenegen::kTimerSegments - 1))] = true;
  }
  spec.rotation_degrees = rng.uniform(-kMaxTemplateRotationDegrees, kMaxTemplateRotationDegrees);
  spec.shrink = kDefaultTemplateShrink;
  return spec;
}

std::array<Point2, 4> template_quad(const TemplateSpec& spec, const Rect& label, render::ImageSize size) {
  const double half_w = 0.5 * size.width;
  const double half_h = 0.5 * size.height;
  const double off_x = std::clamp((label.center_x() - half_w) / half_w, -1.0, 1.0);
  const double off_y = std::clamp((label.center_y() - half_h) / half_h, -1.0, 1.0);
  const double kx = 1.0 - spec.shrink * std::abs(off_x);
  const double ky = 1.0 - spec.shrink * std::abs(off_y);

  // TL, TR, BR, BL around the origin.
  std::array<Point2, 4> q = {{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};
  for (auto& p : q) {
    p.x *= 0.5 * label.width();
    p.y *= 0.5 * label.height();
    if ((off_x < 0.0 && p.x < 0.0) || (off_x > 0.0 && p.x > 0.0)) p.y *= kx;
    if ((off_y < 0.0 && p.y < 0.0) || (off_y > 0.0 && p.y > 0.0)) p.x *= ky;
  }
  const double t = deg_to_rad(spec.rotation_degrees);
  const double c = std::cos(t);
  const double s = std::sin(t);
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (auto& p : q) {
    p = {c * p.x - s * p.y, s * p.x + c * p.y};
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double fx = label.width() / (x1 - x0);
  const double fy = label.height() / (y1 - y0);
  for (auto& p : q) p = {label.x_min + (p.x - x0) * fx, label.y_min + (p.y - y0) * fy};
  return q;
}

Rgb template_color(const TemplateSpec& spec, double u, double v, const scenegen::TrafficLightDims& dims) {
  const double px = u * dims.body_width;
  const double py = v * dims.body_height;
  const double R = dims.bulb_radius;
  const int lit = static_cast<int>(state_index(spec.state));
  for (int i = 0; i < 3; ++i) {
    const double cx = 0.5 * dims.body_width;
    const double cy = dims.body_height * (2 * i + 1) / 6.0;
    if ((px - cx) * (px - cx) + (py - cy) * (py - cy) > R * R) continue;
    if (spec.variant == TemplateVariant::kTimer && i == 1) {
      const double dw = 0.42 * R;
      const double dh = 0.9 * R;
      const double t = 0.14 * R;
      for (int digit = 0; digit < 2; ++digit) {
        const double dcx = cx + (digit == 0 ? -0.33 : 0.33) * R;
        const std::array<std::array<double, 4>, 5> segs = {{{dcx, cy - 0.5 * dh, 0.5 * dw, 0.5 * t},
                                                           {dcx, cy, 0.5 * dw, 0.5 * t},
                                                           {dcx, cy + 0.5 * dh, 0.5 * dw, 0.5 * t},
                                                           {dcx - 0.5 * dw, cy, 0.5 * t, 0.5 * dh},
                                                           {dcx + 0.5 * dw, cy, 0.5 * t, 0.5 * dh}}};
        for (int s = 0; s < 5; ++s) {
          const auto& g = segs[static_cast<std::size_t>(s)];
          if (std::abs(px - g[0]) <= g[2] && std::abs(py - g[1]) <= g[3]) {
            return spec.timer_mask[static_cast<std::size_t>(digit * 5 + s)] ? spec.tone
                                                                             : render::palette::kSegmentOff;
          }
        }
      }
      return render::palette::kBulbShell;
    }
    if (spec.variant == TemplateVariant::kArrow && i == lit) {
      const double sign = spec.arrow_left ? -1.0 : 1.0;
      const double t = 0.14 * R;
      if (std::abs(px - cx) <= 0.55 * R && std::abs(py - cy) <= t) return spec.tone;
      const double tip = cx + sign * 0.55 * R;
      const double k = std::sqrt(0.5);
      const double arm = 0.28 * R;
      for (double vs : {1.0, -1.0}) {
        // Image y grows downward, so "up" arms have negative dy.
        const double dx = -sign * k;
        const double dy = -vs * k;
        if (in_oriented_rect(px, py, tip + dx * arm, cy + dy * arm, dx, dy, arm, t)) return spec.tone;
      }
      return render::palette::kBulbShell;
    }
    return i == lit ? spec.tone : render::palette::kBulbOff;
  }
  return render::palette::kLightBody;
}

void render_template(const TemplateSpec& spec, const Rect& label, Image& canvas,
                     const scenegen::TrafficLightDims& dims) {
  if (canvas.channels() != 4) throw Error(ErrorCode::kInvalidArgument, "template canvas must be RGBA");
  if (!label.valid()) return;
  const auto quad = template_quad(spec, label, {canvas.width(), canvas.height()});
  const Homography inv = Homography::unit_square_to(quad).inverse();
  const int x0 = std::max(0, static_cast<int>(std::floor(label.x_min)));
  const int y0 = std::max(0, static_cast<int>(std::floor(label.y_min)));
  const int x1 = std::min(canvas.width(), static_cast<int>(std::ceil(label.x_max)));
  const int y1 = std::min(canvas.height(), static_cast<int>(std::ceil(label.y_max)));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const Point2 uv = inv.apply(x + 0.5, y + 0.5);
      if (uv.x < 0.0 || uv.x > 1.0 || uv.y < 0.0 || uv.y > 1.0) continue;
      const Rgb c = template_color(spec, uv.x, uv.y, dims);
      canvas.at(x, y, 0) = c.r;
      canvas.at(x, y, 1) = c.g;
      canvas.at(x, y, 2) = c.b;
      canvas.at(x, y, 3) = 255;
    }
  }
}

}  // namespace synthlight::datasets
