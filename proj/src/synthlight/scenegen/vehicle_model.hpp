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

#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "synthlight/scenegen/scene.hpp"

namespace synthlight::scenegen {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

/// Untextured car body in model space: front along +z, up +y, footprint
/// centered on the origin, bottom at y = 0, extents equal to `dims`.
TriangleMesh default_vehicle_mesh(const VehicleDims& dims);

/// Reads `v` and `f` records of a Wavefront OBJ file (polygons are fanned).
TriangleMesh load_obj(const std::filesystem::path& path);

/// Rescales and recenters `mesh` to the model-space convention above. The
/// longest horizontal extent is taken as the vehicle length.
TriangleMesh fit_to_dims(TriangleMesh mesh, const VehicleDims& dims);

}  // namespace synthlight::scenegen
