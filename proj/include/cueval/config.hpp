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

#include <string>

#include "cueval/pipeline.hpp"
#include "cueval/raster.hpp"
#include "cueval/synth.hpp"

namespace cueval {

/// Loads a grid header from JSON:
///   {"width": W, "height": H, "origin_x": X, "origin_y": Y, "cell_size": S}
/// origin is the outer north-west corner of pixel (0,0).
GridSpec load_grid_spec(const std::string& path);

/// Loads a scene description from JSON. Shape:
///   {
///     "grid": {...as load_grid_spec...},
///     "ground_elevation": 0.0, "noise_sigma": 0.0, "seed": 0,
///     "truth_margin_m": 3.0,
///     "buildings": [
///       {"footprint": [x0, y0, x1, y1], "roof": "flat|shed|gable|hip",
///        "eave_height": 8.0, "pitch": 0.5, "ridge_axis": "x|y"}
///     ]
///   }
/// Everything but "grid" is optional and defaults as in SceneSpec.
SceneSpec load_scene_spec(const std::string& path);

/// Overlays run settings from a JSON config file onto `cfg`. Recognized
/// keys mirror the eval CLI flags (paths: ref_mask, ref_dsm, test_mask,
/// test_dsm, test_mesh, grid_spec, out_dir; numbers: z_threshold,
/// angle_threshold, normal_radius_m, min_points, registration_radius,
/// hist_bin_width; booleans: emit_error_map, emit_slope, emit_hist).
/// Unknown keys are a ParseError. Flags given on the command line still win.
void apply_run_config_file(const std::string& path, RunConfig& cfg);

}  // namespace cueval
