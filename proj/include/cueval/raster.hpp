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

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cueval/errors.hpp"

namespace cueval {

/// Grid header shared by all rasters.
///
/// Grids are stored row-major and north-up: row 0 is the northernmost row.
/// (origin_x, origin_y) is the world coordinate of the outer (north-west)
/// corner of pixel (0, 0), so the center of pixel (col, row) sits at
///   x = origin_x + (col + 0.5) * cell_size
///   y = origin_y - (row + 0.5) * cell_size
/// Cells are square; cell_size is in meters.
struct GridSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 1.0;

  std::size_t size() const { return width * height; }
  double col_center_x(std::size_t col) const {
    return origin_x + (static_cast<double>(col) + 0.5) * cell_size;
  }
  double row_center_y(std::size_t row) const {
    return origin_y - (static_cast<double>(row) + 0.5) * cell_size;
  }

  bool operator==(const GridSpec&) const = default;
};

/// True iff the two headers describe the same pixel lattice: identical
/// dimensions, and origin/cell size equal within 1e-9 relative tolerance
/// (with an absolute floor of 1e-9 so origins near zero compare sanely).
/// Evaluation never resamples; callers reject misaligned grids instead.
bool resample_check(const GridSpec& a, const GridSpec& b);

inline constexpr double kDefaultNodata = -9999.0;

/// Row-major georeferenced grid of 64-bit float samples with a nodata
/// sentinel. A sample is valid iff it is finite and its bit pattern differs
/// from the sentinel's; this makes validity checks exact even for NaN
/// sentinels and preserves them through binary round trips.
struct RasterGrid {
  GridSpec spec;
  double nodata = kDefaultNodata;
  std::vector<double> values;

  RasterGrid() = default;
  explicit RasterGrid(const GridSpec& s, double nodata_value = kDefaultNodata)
      : spec(s), nodata(nodata_value), values(s.size(), nodata_value) {}

  std::size_t width() const { return spec.width; }
  std::size_t height() const { return spec.height; }
  std::size_t index(std::size_t col, std::size_t row) const {
    return row * spec.width + col;
  }
  double at(std::size_t col, std::size_t row) const {
    return values[index(col, row)];
  }
  double& at(std::size_t col, std::size_t row) {
    return values[index(col, row)];
  }

  bool valid(std::size_t idx) const {
    const double v = values[idx];
    return std::isfinite(v) && std::bit_cast<std::uint64_t>(v) !=
                                   std::bit_cast<std::uint64_t>(nodata);
  }
  bool valid_at(std::size_t col, std::size_t row) const {
    return valid(index(col, row));
  }
  std::size_t valid_count() const;
};

/// On-disk encodings. kAsciiGrid is the plain-text grid format with the
/// ncols/nrows/xllcorner/yllcorner/cellsize/NODATA_value header; samples are
/// written with 17 significant digits so round trips are bit-exact.
/// kBinaryGrid is a little-endian binary format ("CEVG" magic, version,
/// dimensions, origin, cell size, nodata, then raw float64 samples).
enum class RasterFormat { kAsciiGrid, kBinaryGrid };

/// Picks the format for a path by extension: ".asc" -> kAsciiGrid,
/// ".cevg" -> kBinaryGrid. Anything else is a ParseError.
RasterFormat raster_format_for_path(const std::string& path);

RasterGrid read_raster(const std::string& path, RasterFormat format);
void write_raster(const RasterGrid& grid, const std::string& path,
                  RasterFormat format);

/// Convenience wrappers that dispatch on the file extension.
RasterGrid read_raster(const std::string& path);
void write_raster(const RasterGrid& grid, const std::string& path);

/// Binary (0/1) label raster. Valid samples must be exactly 0 or 1; nodata
/// marks pixels where the labeling is unknown.
struct LabelMask {
  RasterGrid grid;

  /// Wraps a grid after checking every valid sample is 0 or 1.
  static LabelMask from_grid(RasterGrid g);

  bool known(std::size_t idx) const { return grid.valid(idx); }
  bool positive(std::size_t idx) const {
    return grid.valid(idx) && grid.values[idx] == 1.0;
  }
  bool positive_at(std::size_t col, std::size_t row) const {
    return positive(grid.index(col, row));
  }
  const GridSpec& spec() const { return grid.spec; }
};

LabelMask read_mask(const std::string& path);

}  // namespace cueval
