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
#include <string>
#include <vector>

#include "cueval/metrics.hpp"
#include "cueval/registration.hpp"

namespace cueval {

/// Pixel tallies reported alongside the metrics. tp_c/fp_c/fn_c are the
/// plain confusion counts; tp_z_pass and tp_theta_pass count true positives
/// surviving the elevation and elevation+slope constraints; the unevaluable
/// counts say how many true positives passed a constraint only because it
/// could not be measured there.
struct ReportCounts {
  std::uint64_t tp_c = 0;
  std::uint64_t fp_c = 0;
  std::uint64_t fn_c = 0;
  std::uint64_t tp_z_pass = 0;
  std::uint64_t tp_theta_pass = 0;
  std::uint64_t z_unevaluable = 0;
  std::uint64_t theta_unevaluable = 0;

  bool operator==(const ReportCounts&) const = default;
};

/// Everything one evaluation run produces, minus the optional rasters.
struct MetricsReport {
  EvalConfig config;
  Offset offset;
  ReportCounts counts;
  double iou_c = 1.0;
  double iou_z = 1.0;
  double iou_m = 1.0;
  RmsStats rms;

  bool operator==(const MetricsReport&) const = default;
};

/// Digest of one input file, recorded in the report for provenance.
struct InputDigest {
  std::string label;
  std::string path;
  std::uint64_t digest = 0;  // FNV-1a 64 of the raw bytes
};

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

/// Serializes a report as JSON with a fixed key order and no timestamps, so
/// equal reports serialize to equal bytes. Optional rms values serialize as
/// null.
std::string serialize_report(const MetricsReport& report,
                             const std::vector<InputDigest>& inputs = {});

/// Parses a serialized report back; ignores the provenance block.
/// Malformed input is a ParseError.
MetricsReport parse_report(const std::string& json_text);

std::string serialize_histogram(const SlopeHistogram& hist);

}  // namespace cueval
