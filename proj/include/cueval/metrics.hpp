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
#include <optional>
#include <vector>

#include "cueval/normals.hpp"
#include "cueval/raster.hpp"

namespace cueval {

/// Thresholds and knobs for one evaluation run.
struct EvalConfig {
  double z_threshold = 1.0;       // meters; elevation constraint is |dz| < this
  double angle_threshold = 5.0;   // degrees; slope constraint is angle < this
  double normal_radius_m = 3.0;   // normal-estimation window radius
  int min_points = 6;             // minimum window points for a normal
  int registration_radius = 10;   // pixel search radius for registration

  bool operator==(const EvalConfig&) const = default;
};

/// Per-pixel outcome of the cumulative comparison. The numeric values are
/// the class codes used when exporting the map as a raster.
enum class PixelClass : std::uint8_t {
  kTrueNegative = 0,
  kFalsePositive = 1,
  kFalseNegative = 2,
  kTruePositivePass = 3,      // true positive passing both constraints
  kTruePositiveFailZ = 4,     // true positive failing the elevation constraint
  kTruePositiveFailSlope = 5, // passing elevation, failing the slope constraint
  kExcluded = 6,              // reference labeling unknown; outside all counts
};

struct ErrorMap {
  GridSpec spec;
  std::vector<PixelClass> classes;
};

/// Class tallies of an error map.
struct ClassCounts {
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tp_pass = 0;
  std::uint64_t tp_fail_z = 0;
  std::uint64_t tp_fail_slope = 0;
  std::uint64_t excluded = 0;

  std::uint64_t tp() const { return tp_pass + tp_fail_z + tp_fail_slope; }
  bool operator==(const ClassCounts&) const = default;
};

ClassCounts tally(const ErrorMap& map);

/// Exports the error map as a raster of class codes (see PixelClass).
RasterGrid class_raster(const ErrorMap& map);

struct IouCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  std::uint64_t excluded = 0;
};

struct IouResult {
  double iou = 1.0;
  IouCounts counts;
};

/// Plain semantic IOU of two binary masks: tp / (tp + fn + fp), where pixels
/// with unknown reference labeling are excluded entirely and pixels unknown
/// only in the test mask count as test-negative. An empty denominator (no
/// building anywhere) is a perfect score of 1.
IouResult iou_c(const LabelMask& test_mask, const LabelMask& ref_mask);

/// Classifies every pixel for the cumulative metric family.
///
/// A true positive passes the elevation constraint iff |test z - ref z| <
/// cfg.z_threshold, and passes the slope constraint iff the angle between
/// the test and reference normals is < cfg.angle_threshold. A constraint
/// that cannot be measured at a pixel (either surface sample missing for
/// elevation; reference normal invalid for slope) counts as passing, so
/// missing data never penalizes the score. A measurable slope comparison
/// against an invalid *test* normal fails.
ErrorMap classify(const LabelMask& test_mask, const LabelMask& ref_mask,
                  const RasterGrid& test_dsm, const RasterGrid& ref_dsm,
                  const NormalField& ref_normals,
                  const NormalField& test_normals, const EvalConfig& cfg);

/// The cumulative IOU family derived from an error map:
///   iou_c counts every true positive,
///   iou_z only those passing the elevation constraint,
///   iou_m only those passing elevation and slope;
/// demoted true positives join the false negatives, so
/// iou_m <= iou_z <= iou_c always holds.
struct CumulativeIou {
  double iou_c = 1.0;
  double iou_z = 1.0;
  double iou_m = 1.0;
};

CumulativeIou cumulative_iou(const ErrorMap& map);

/// RMS of elevation residuals over true positives with both surfaces
/// measured, and RMS of normal angles (degrees) over true positives where
/// both normals are valid. Absent when the respective set is empty.
struct RmsStats {
  std::optional<double> rms_z;
  std::optional<double> rms_theta;

  bool operator==(const RmsStats&) const = default;
};

RmsStats rms_stats(const ErrorMap& map, const RasterGrid& test_dsm,
                   const RasterGrid& ref_dsm, const NormalField& ref_normals,
                   const NormalField& test_normals);

/// How many true positives had an unmeasurable constraint (and therefore
/// passed it by policy).
struct UnevaluableCounts {
  std::uint64_t z_unevaluable = 0;
  std::uint64_t theta_unevaluable = 0;
};

UnevaluableCounts count_unevaluable(const LabelMask& test_mask,
                                    const LabelMask& ref_mask,
                                    const RasterGrid& test_dsm,
                                    const RasterGrid& ref_dsm,
                                    const NormalField& ref_normals);

/// Histogram of slope angles (degrees from vertical) over the valid samples
/// of a normal field. Bin i covers [i * bin_width, (i+1) * bin_width); the
/// last bin ends at or above 90 degrees. Marker angles are the slopes of
/// the standard roof pitches k/12 for k = 1..12.
struct SlopeHistogram {
  double bin_width_deg = 1.0;
  std::vector<std::uint64_t> counts;
  std::vector<double> pitch_markers_deg;
};

SlopeHistogram slope_histogram(const NormalField& field,
                               double bin_width_deg = 1.0);

}  // namespace cueval
