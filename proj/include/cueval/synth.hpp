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

#include <cstdint>
#include <vector>

#include "cueval/mesh.hpp"
#include "cueval/normals.hpp"
#include "cueval/raster.hpp"

namespace cueval {

enum class RoofKind { kFlat, kShed, kGable, kHip };

/// Ridge orientation for shed/gable/hip roofs. kAxisY means the ridge (or
/// the shed's level direction) runs north-south, so the surface slopes
/// along x.
enum class RidgeAxis { kAxisX, kAxisY };

/// Axis-aligned building footprint with an analytic roof. Heights are
/// absolute elevations; `pitch` is the roof gradient (rise over run, e.g.
/// 0.5 for a 6/12 pitch). Flat roofs ignore pitch and ridge_axis.
struct Building {
  double x0 = 0.0, y0 = 0.0;  // south-west footprint corner
  double x1 = 0.0, y1 = 0.0;  // north-east footprint corner
  RoofKind roof = RoofKind::kFlat;
  double eave_height = 0.0;
  double pitch = 0.0;
  RidgeAxis ridge_axis = RidgeAxis::kAxisY;
};

/// Full description of a synthetic scene. Footprints must be disjoint and
/// inside the grid extent. `truth_margin_m` controls how close to a crease
/// (footprint edges, ridges, hip seams) the analytic truth normals are still
/// published; within the margin they are marked invalid, matching what any
/// windowed estimator of the same radius can honestly recover.
struct SceneSpec {
  GridSpec grid;
  std::vector<Building> buildings;
  double ground_elevation = 0.0;
  double noise_sigma = 0.0;  // stddev of Gaussian noise added to the surface
  std::uint64_t seed = 0;
  double truth_margin_m = 3.0;
};

/// A generated scene: footprint mask, noisy surface grid, the triangle mesh
/// the surface was sampled from, and analytic truth normals.
struct Scene {
  LabelMask mask;
  RasterGrid dsm;
  TriangleMesh mesh;
  NormalField truth_normals;
};

/// Deterministically generates a scene: same spec and seed give bit-equal
/// outputs. The surface is the rasterized top surface of the scene mesh
/// (so mesh and grid inputs describe the same world by construction) plus
/// optional per-pixel Gaussian noise. Throws ParseError for invalid specs
/// (overlapping or out-of-bounds footprints, non-positive sizes, eaves at
/// or below ground, negative pitch).
Scene generate(const SceneSpec& spec);

/// Counter-based Gaussian sampler used for surface noise: (seed, k) maps to
/// the k-th standard normal draw via splitmix64-style bit mixing and a
/// Box-Muller transform. Pure function of its arguments, which makes noisy
/// scenes reproducible sample-by-sample.
double gaussian_sample(std::uint64_t seed, std::uint64_t counter);

}  // namespace cueval
