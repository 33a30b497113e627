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

#include "synthlight/scenegen/vehicle_model.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace synthlight::scenegen {
namespace {

void append_box(TriangleMesh& mesh, const Vec3& lo, const Vec3& hi) {
  const int base = static_cast<int>(mesh.vertices.size());
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.push_back({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z});
  }
  // Outward counter-clockwise winding.
  static constexpr int kFaces[12][3] = {{0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5},
                                        {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3},
                                        {0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}};
  for (const auto& f : kFaces) mesh.faces.push_back({base + f[0], base + f[1], base + f[2]});
}

}  // namespace

TriangleMesh default_vehicle_mesh(const VehicleDims& dims) {
  TriangleMesh mesh;
  const double hl = 0.5 * dims.length;
  const double hw = 0.5 * dims.width;
  const double body_top = 0.6 * dims.height;
  const double wheel_gap = 0.12 * dims.height;
  // Lower body, cabin, four wheel blocks.
  append_box(mesh, {-hw, wheel_gap, -hl}, {hw, body_top, hl});
  append_box(mesh, {-0.88 * hw, body_top, -0.55 * hl}, {0.88 * hw, dims.height, 0.3 * hl});
  for (double sx : {-1.0, 1.0}) {
    for (double sz : {-0.65, 0.65}) {
      const Vec3 c{sx * 0.8 * hw, 0.0, sz * hl};
      append_box(mesh, {c.x - 0.18 * hw, 0.0, c.z - 0.15 * hl},
                 {c.x + 0.18 * hw, wheel_gap + 1.0, c.z + 0.15 * hl});
    }
  }
  return mesh;
}

TriangleMesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vehicle model " + path.string());
  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 v;
      if (!(ss >> v.x >> v.y >> v.z)) throw ParseError(line_no, "bad vertex in " + path.string());
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        int i = 0;
        try {
          i = std::stoi(tok.substr(0, tok.find('/')));
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad face index in " + path.string());
        }
        // OBJ indices are 1-based; negative values count from the end.
        idx.push_back(i > 0 ? i - 1 : static_cast<int>(mesh.vertices.size()) + i);
      }
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) mesh.faces.push_back({idx[0], idx[k], idx[k + 1]});
    }
  }
  for (const auto& f : mesh.faces) {
    for (int i : f) {
      if (i < 0 || i >= static_cast<int>(mesh.vertices.size())) {
        throw Error(ErrorCode::kParse, "face index out of range in " + path.string());
      }
    }
  }
  if (mesh.faces.empty()) throw Error(ErrorCode::kParse, "no faces in " + path.string());
  return mesh;
}

TriangleMesh fit_to_dims(TriangleMesh mesh, const VehicleDims& dims) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Vec3 lo{kInf, kInf, kInf};
  Vec3 hi{-kInf, -kInf, -kInf};
  for (const Vec3& v : mesh.vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  const bool swap_xz = (hi.x - lo.x) > (hi.z - lo.z);
  const double ex = swap_xz ? hi.z - lo.z : hi.x - lo.x;
  const double ez = swap_xz ? hi.x - lo.x : hi.z - lo.z;
  const double ey = hi.y - lo.y;
  if (ex <= 0 || ey <= 0 || ez <= 0) {
    throw Error(ErrorCode::kParse, "vehicle model has a degenerate bounding box");
  }
  const Vec3 center{0.5 * (lo.x + hi.x), lo.y, 0.5 * (lo.z + hi.z)};
  for (Vec3& v : mesh.vertices) {
    Vec3 p = v - center;
    if (swap_xz) p = {p.z, p.y, -p.x};
    v = {p.x * dims.width / ex, p.y * dims.height / ey, p.z * dims.length / ez};
  }
  return mesh;
}

}  // namespace synthlight::scenegen
