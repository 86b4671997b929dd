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

#include "cueval/metrics.hpp"
#include "cueval/report.hpp"

namespace cueval {

/// One full evaluation run. The test surface comes either from a raster
/// (test_dsm_path) or from a mesh (test_mesh_path) rasterized onto the grid
/// in grid_spec_path (reference grid when empty) -- exactly one of the two
/// must be set. All grids must share the reference lattice.
struct RunConfig {
  std::string ref_mask_path;
  std::string ref_dsm_path;
  std::string test_mask_path;
  std::string test_dsm_path;
  std::string test_mesh_path;
  std::string grid_spec_path;

  EvalConfig eval;

  std::string out_dir;  // empty: compute only, write nothing
  bool emit_error_map = false;
  bool emit_slope = false;
  bool emit_hist = false;
  double hist_bin_width = 1.0;
};

/// Runs load -> (rasterize) -> register -> normals -> classify -> metrics,
/// writes the report (and any requested rasters) into out_dir, and returns
/// the report. Every file lands atomically via a rename, so readers never
/// observe partial output. Error messages name the pipeline stage.
MetricsReport evaluate(const RunConfig& cfg);

/// Writes `text` to `path` via a temp file + rename in the same directory.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace cueval
