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

#include "cueval/report.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "cueval/errors.hpp"
#include "cueval/version.hpp"

namespace cueval {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto n = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return hash;
}

std::string serialize_report(const MetricsReport& report,
                             const std::vector<InputDigest>& inputs) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  if (!inputs.empty()) {
    ordered_json arr = ordered_json::array();
    for (const InputDigest& d : inputs) {
      ordered_json e;
      e["label"] = d.label;
      e["path"] = d.path;
      e["fnv1a64"] = hex64(d.digest);
      arr.push_back(std::move(e));
    }
    j["inputs"] = std::move(arr);
  }
  j["config"] = {{"z_threshold", report.config.z_threshold},
                 {"angle_threshold", report.config.angle_threshold},
                 {"normal_radius_m", report.config.normal_radius_m},
                 {"min_points", report.config.min_points},
                 {"registration_radius", report.config.registration_radius}};
  j["offset"] = {{"dx_pixels", report.offset.dx_pixels},
                 {"dy_pixels", report.offset.dy_pixels},
                 {"dz_meters", report.offset.dz_meters}};
  j["counts"] = {{"tp_c", report.counts.tp_c},
                 {"fp_c", report.counts.fp_c},
                 {"fn_c", report.counts.fn_c},
                 {"tp_z_pass", report.counts.tp_z_pass},
                 {"tp_theta_pass", report.counts.tp_theta_pass},
                 {"z_unevaluable", report.counts.z_unevaluable},
                 {"theta_unevaluable", report.counts.theta_unevaluable}};
  ordered_json metrics;
  metrics["iou_c"] = report.iou_c;
  metrics["iou_z"] = report.iou_z;
  metrics["iou_m"] = report.iou_m;
  metrics["rms_z"] =
      report.rms.rms_z ? ordered_json(*report.rms.rms_z) : ordered_json(nullptr);
  metrics["rms_theta"] = report.rms.rms_theta ? ordered_json(*report.rms.rms_theta)
                                              : ordered_json(nullptr);
  j["metrics"] = std::move(metrics);
  return j.dump(2) + "\n";
}

MetricsReport parse_report(const std::string& json_text) {
  try {
    const ordered_json j = ordered_json::parse(json_text);
    MetricsReport r;
    const auto& cfg = j.at("config");
    r.config.z_threshold = cfg.at("z_threshold").get<double>();
    r.config.angle_threshold = cfg.at("angle_threshold").get<double>();
    r.config.normal_radius_m = cfg.at("normal_radius_m").get<double>();
    r.config.min_points = cfg.at("min_points").get<int>();
    r.config.registration_radius = cfg.at("registration_radius").get<int>();
    const auto& off = j.at("offset");
    r.offset.dx_pixels = off.at("dx_pixels").get<int>();
    r.offset.dy_pixels = off.at("dy_pixels").get<int>();
    r.offset.dz_meters = off.at("dz_meters").get<double>();
    const auto& counts = j.at("counts");
    r.counts.tp_c = counts.at("tp_c").get<std::uint64_t>();
    r.counts.fp_c = counts.at("fp_c").get<std::uint64_t>();
    r.counts.fn_c = counts.at("fn_c").get<std::uint64_t>();
    r.counts.tp_z_pass = counts.at("tp_z_pass").get<std::uint64_t>();
    r.counts.tp_theta_pass = counts.at("tp_theta_pass").get<std::uint64_t>();
    r.counts.z_unevaluable = counts.at("z_unevaluable").get<std::uint64_t>();
    r.counts.theta_unevaluable =
        counts.at("theta_unevaluable").get<std::uint64_t>();
    const auto& metrics = j.at("metrics");
    r.iou_c = metrics.at("iou_c").get<double>();
    r.iou_z = metrics.at("iou_z").get<double>();
    r.iou_m = metrics.at("iou_m").get<double>();
    if (!metrics.at("rms_z").is_null())
      r.rms.rms_z = metrics.at("rms_z").get<double>();
    if (!metrics.at("rms_theta").is_null())
      r.rms.rms_theta = metrics.at("rms_theta").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string serialize_histogram(const SlopeHistogram& hist) {
  ordered_json j;
  j["bin_width_deg"] = hist.bin_width_deg;
  j["counts"] = hist.counts;
  j["pitch_markers_deg"] = hist.pitch_markers_deg;
  return j.dump(2) + "\n";
}

}  // namespace cueval
