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

#include <utility>

#include "cueval/raster.hpp"

namespace cueval {

/// Rigid whole-pixel translation between a test model and the reference.
/// dx/dy are in pixels (+dx moves the test model east, +dy south); dz is the
/// vertical correction in meters added to every test sample.
struct Offset {
  int dx_pixels = 0;
  int dy_pixels = 0;
  double dz_meters = 0.0;

  bool operator==(const Offset&) const = default;
};

/// Finds the integer pixel shift in [-radius, radius]^2 that maximizes the
/// binary IOU between the shifted test mask and the reference mask, then the
/// median vertical residual (reference minus shifted test) over true-positive
/// pixels where both surfaces have data. Pixels the shift vacates count as
/// test-negative; an empty residual set yields dz = 0.
///
/// Ties on IOU prefer the smallest dx^2 + dy^2, then smaller dy, then
/// smaller dx, which keeps the result deterministic and order-independent.
Offset register_translation(const LabelMask& test_mask,
                            const RasterGrid& test_dsm,
                            const LabelMask& ref_mask,
                            const RasterGrid& ref_dsm, int radius);

/// Applies an offset: shifts mask and surface by (dx, dy) whole pixels,
/// filling vacated pixels with nodata, and adds dz to every valid shifted
/// surface sample. Grids keep their spec.
std::pair<LabelMask, RasterGrid> apply_offset(const LabelMask& mask,
                                              const RasterGrid& dsm,
                                              const Offset& offset);

}  // namespace cueval
