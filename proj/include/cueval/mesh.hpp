// Copyright 2026 the cueval authors
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
#include <cstdint>
#include <string>
#include <vector>

#include "cueval/raster.hpp"

namespace cueval {

/// Indexed triangle soup in world coordinates (meters, z up).
struct TriangleMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;  // 0-based indices
};

/// Reads the v/f subset of Wavefront OBJ. Faces with more than three
/// vertices are fan-triangulated; `a/b/c` index tokens keep only the vertex
/// index; vt/vn/usemtl/... records are skipped. Negative (relative) indices
/// are rejected. Errors name the offending line.
TriangleMesh read_obj(const std::string& path);
void write_obj(const TriangleMesh& mesh, const std::string& path);

/// Rasterizes the top surface of `mesh` onto `spec`: each pixel takes the
/// maximum interpolated z over all triangles whose closed 2D projection
/// covers the pixel center (edges and vertices inclusive). Triangles with
/// zero XY-projected area (walls, degenerate slivers) never cover anything.
/// Pixels covered by no triangle are `nodata`.
RasterGrid rasterize_mesh(const TriangleMesh& mesh, const GridSpec& spec,
                          double nodata = kDefaultNodata);

}  // namespace cueval
