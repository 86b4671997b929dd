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

#include "cueval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cueval {

namespace {

double ratio_or_one(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_eval_config(const EvalConfig& cfg) {
  if (!(cfg.z_threshold > 0.0))
    throw std::invalid_argument("z threshold must be positive");
  if (!(cfg.angle_threshold > 0.0 && cfg.angle_threshold < 90.0))
    throw std::invalid_argument("angle threshold must be in (0, 90) degrees");
}

}  // namespace

ClassCounts tally(const ErrorMap& map) {
  ClassCounts c;
  for (PixelClass p : map.classes) {
    switch (p) {
      case PixelClass::kTrueNegative: ++c.tn; break;
      case PixelClass::kFalsePositive: ++c.fp; break;
      case PixelClass::kFalseNegative: ++c.fn; break;
      case PixelClass::kTruePositivePass: ++c.tp_pass; break;
      case PixelClass::kTruePositiveFailZ: ++c.tp_fail_z; break;
      case PixelClass::kTruePositiveFailSlope: ++c.tp_fail_slope; break;
      case PixelClass::kExcluded: ++c.excluded; break;
    }
  }
  return c;
}

RasterGrid class_raster(const ErrorMap& map) {
  RasterGrid out(map.spec, kDefaultNodata);
  for (std::size_t i = 0; i < map.classes.size(); ++i) {
    out.values[i] = static_cast<double>(map.classes[i]);
  }
  return out;
}

IouResult iou_c(const LabelMask& test_mask, const LabelMask& ref_mask) {
  if (!resample_check(test_mask.spec(), ref_mask.spec()))
    throw AlignmentError("masks do not share one pixel lattice");

  IouResult r;
  const std::size_t n = ref_mask.spec().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!ref_mask.known(i)) {
      ++r.counts.excluded;
      continue;
    }
    const bool truth = ref_mask.positive(i);
    const bool predicted = test_mask.positive(i);  // unknown counts as 0
    if (predicted && truth) {
      ++r.counts.tp;
    } else if (predicted) {
      ++r.counts.fp;
    } else if (truth) {
      ++r.counts.fn;
    } else {
      ++r.counts.tn;
    }
  }
  r.iou = ratio_or_one(r.counts.tp, r.counts.tp + r.counts.fn + r.counts.fp);
  return r;
}

ErrorMap classify(const LabelMask& test_mask, const LabelMask& ref_mask,
                  const RasterGrid& test_dsm, const RasterGrid& ref_dsm,
                  const NormalField& ref_normals,
                  const NormalField& test_normals, const EvalConfig& cfg) {
  check_eval_config(cfg);
  const GridSpec& spec = ref_mask.spec();
  if (!resample_check(test_mask.spec(), spec) ||
      !resample_check(test_dsm.spec, spec) ||
      !resample_check(ref_dsm.spec, spec) ||
      !resample_check(ref_normals.spec, spec) ||
      !resample_check(test_normals.spec, spec)) {
    throw AlignmentError("classification inputs do not share one pixel lattice");
  }

  // The angle constraint is evaluated in the cosine domain: with unit
  // normals, angle < threshold  <=>  dot > cos(threshold). This keeps the
  // strict inequality exact at the threshold itself.
  const double cos_threshold =
      std::cos(cfg.angle_threshold * std::numbers::pi / 180.0);

  ErrorMap map;
  map.spec = spec;
  map.classes.resize(spec.size(), PixelClass::kExcluded);

  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!ref_mask.known(i)) {
      map.classes[i] = PixelClass::kExcluded;
      continue;
    }
    const bool truth = ref_mask.positive(i);
    const bool predicted = test_mask.positive(i);
    if (!truth && !predicted) {
      map.classes[i] = PixelClass::kTrueNegative;
      continue;
    }
    if (!truth) {
      map.classes[i] = PixelClass::kFalsePositive;
      continue;
    }
    if (!predicted) {
      map.classes[i] = PixelClass::kFalseNegative;
      continue;
    }

    // True positive: apply the cumulative constraints. A constraint that
    // cannot be measured here passes by policy.
    bool z_ok = true;
    if (ref_dsm.valid(i) && test_dsm.valid(i)) {
      z_ok = std::abs(test_dsm.values[i] - ref_dsm.values[i]) < cfg.z_threshold;
    }
    if (!z_ok) {
      map.classes[i] = PixelClass::kTruePositiveFailZ;
      continue;
    }

    bool theta_ok = true;
    const NormalSample& rn = ref_normals.samples[i];
    if (rn.valid) {
      const NormalSample& tn = test_normals.samples[i];
      if (!tn.valid) {
        theta_ok = false;  // the reference demands a slope; the test has none
      } else {
        const double dot = std::clamp(
            rn.nx * tn.nx + rn.ny * tn.ny + rn.nz * tn.nz, -1.0, 1.0);
        theta_ok = dot > cos_threshold;
      }
    }
    map.classes[i] = theta_ok ? PixelClass::kTruePositivePass
                              : PixelClass::kTruePositiveFailSlope;
  }
  return map;
}

CumulativeIou cumulative_iou(const ErrorMap& map) {
  const ClassCounts c = tally(map);
  CumulativeIou out;
  const std::uint64_t base = c.fp + c.fn;
  out.iou_c = ratio_or_one(c.tp(), c.tp() + base);
  // True positives failing a constraint are demoted to false negatives for
  // the stricter metric; the denominator (tp + fn + fp) is unchanged.
  out.iou_z = ratio_or_one(c.tp_pass + c.tp_fail_slope, c.tp() + base);
  out.iou_m = ratio_or_one(c.tp_pass, c.tp() + base);
  return out;
}

RmsStats rms_stats(const ErrorMap& map, const RasterGrid& test_dsm,
                   const RasterGrid& ref_dsm, const NormalField& ref_normals,
                   const NormalField& test_normals) {
  const GridSpec& spec = map.spec;
  if (!resample_check(test_dsm.spec, spec) ||
      !resample_check(ref_dsm.spec, spec) ||
      !resample_check(ref_normals.spec, spec) ||
      !resample_check(test_normals.spec, spec)) {
    throw AlignmentError("RMS inputs do not share one pixel lattice");
  }

  double sum_z2 = 0.0;
  std::uint64_t n_z = 0;
  double sum_t2 = 0.0;
  std::uint64_t n_t = 0;
  for (std::size_t i = 0; i < map.classes.size(); ++i) {
    const PixelClass p = map.classes[i];
    const bool tp = p == PixelClass::kTruePositivePass ||
                    p == PixelClass::kTruePositiveFailZ ||
                    p == PixelClass::kTruePositiveFailSlope;
    if (!tp) continue;
    if (ref_dsm.valid(i) && test_dsm.valid(i)) {
      const double dz = test_dsm.values[i] - ref_dsm.values[i];
      sum_z2 += dz * dz;
      ++n_z;
    }
    const NormalSample& rn = ref_normals.samples[i];
    const NormalSample& tn = test_normals.samples[i];
    if (rn.valid && tn.valid) {
      const double angle = angle_between({rn.nx, rn.ny, rn.nz},
                                         {tn.nx, tn.ny, tn.nz});
      sum_t2 += angle * angle;
      ++n_t;
    }
  }

  RmsStats out;
  if (n_z > 0) out.rms_z = std::sqrt(sum_z2 / static_cast<double>(n_z));
  if (n_t > 0) out.rms_theta = std::sqrt(sum_t2 / static_cast<double>(n_t));
  return out;
}

UnevaluableCounts count_unevaluable(const LabelMask& test_mask,
                                    const LabelMask& ref_mask,
                                    const RasterGrid& test_dsm,
                                    const RasterGrid& ref_dsm,
                                    const NormalField& ref_normals) {
  UnevaluableCounts out;
  const std::size_t n = ref_mask.spec().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!ref_mask.known(i) || !ref_mask.positive(i) || !test_mask.positive(i))
      continue;
    if (!ref_dsm.valid(i) || !test_dsm.valid(i)) ++out.z_unevaluable;
    if (!ref_normals.samples[i].valid) ++out.theta_unevaluable;
  }
  return out;
}

SlopeHistogram slope_histogram(const NormalField& field, double bin_width_deg) {
  if (!(bin_width_deg > 0.0))
    throw std::invalid_argument("histogram bin width must be positive");

  SlopeHistogram hist;
  hist.bin_width_deg = bin_width_deg;
  const auto nbins =
      static_cast<std::size_t>(std::floor(90.0 / bin_width_deg)) + 1;
  hist.counts.assign(nbins, 0);
  for (const NormalSample& s : field.samples) {
    if (!s.valid) continue;
    const double angle = slope_angle_deg(s);
    auto bin = static_cast<std::size_t>(std::floor(angle / bin_width_deg));
    if (bin >= nbins) bin = nbins - 1;
    ++hist.counts[bin];
  }
  hist.pitch_markers_deg.reserve(12);
  for (int k = 1; k <= 12; ++k) {
    hist.pitch_markers_deg.push_back(std::atan(k / 12.0) * 180.0 /
                                     std::numbers::pi);
  }
  return hist;
}

}  // namespace cueval
