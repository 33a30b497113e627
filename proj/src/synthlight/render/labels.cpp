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

#include "synthlight/render/labels.hpp"

#include <limits>

namespace synthlight::render {

std::optional<Rect> project_light_face(const scenegen::TrafficLightSpec& light,
                                       const scenegen::TrafficLightDims& dims,
                                       const scenegen::CameraSpec& camera, ImageSize size) {
  const PinholeCamera cam(camera, size);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Rect r{kInf, kInf, -kInf, -kInf};
  for (const Vec3& corner : scenegen::front_face_corners(light, dims)) {
    const Vec3 c = cam.to_camera(corner);
    if (!(c.z > 0.0)) return std::nullopt;
    const Pixel p = cam.project_camera(c);
    r = {std::min(r.x_min, p.x), std::min(r.y_min, p.y), std::max(r.x_max, p.x),
         std::max(r.y_max, p.y)};
  }
  return r;
}

double fraction_inside(const Rect& box, ImageSize size) noexcept {
  const double area = box.area();
  if (area <= 0.0) return 0.0;
  const Rect frame{0.0, 0.0, static_cast<double>(size.width), static_cast<double>(size.height)};
  return intersect(box, frame).area() / area;
}

std::vector<LabeledBox> label_lights(const scenegen::SceneGraph& scene,
                                     const scenegen::CameraSpec& camera,
                                     const scenegen::TrafficLightDims& dims) {
  const ImageSize size{scene.image_width, scene.image_height};
  const Rect frame{0.0, 0.0, static_cast<double>(size.width), static_cast<double>(size.height)};
  std::vector<LabeledBox> labels;
  for (const scenegen::PoleSpec& pole : scene.poles) {
    for (const scenegen::TrafficLightSpec& light : pole.mounted_lights) {
      if (light.associated_stretch != scenegen::Direction::kSouth) continue;
      const std::optional<Rect> box = project_light_face(light, dims, camera, size);
      if (!box || !box->valid()) continue;
      // Outside share >= 50% means inside share <= 50%.
      if (fraction_inside(*box, size) <= 0.5) continue;
      labels.push_back({light.state, intersect(*box, frame)});
    }
  }
  return labels;
}

}  // namespace synthlight::render
