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

#include "cueval/registration.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cueval {

namespace {

struct Candidate {
  int dx = 0;
  int dy = 0;
  std::uint64_t tp = 0;
  std::uint64_t denom = 0;  // tp + fn + fp; 0 means the IOU is vacuously 1
};

// Compares candidate IOUs exactly as integer fractions (an empty denominator
// counts as 1/1), so ties are decided by the documented rule and never by
// floating-point noise: closer shifts win, then smaller dy, then smaller dx.
bool better(const Candidate& a, const Candidate& b) {
  const std::uint64_t num_a = a.denom == 0 ? 1 : a.tp;
  const std::uint64_t den_a = a.denom == 0 ? 1 : a.denom;
  const std::uint64_t num_b = b.denom == 0 ? 1 : b.tp;
  const std::uint64_t den_b = b.denom == 0 ? 1 : b.denom;
  const std::uint64_t lhs = num_a * den_b;
  const std::uint64_t rhs = num_b * den_a;
  if (lhs != rhs) return lhs > rhs;
  const long long da = static_cast<long long>(a.dx) * a.dx +
                       static_cast<long long>(a.dy) * a.dy;
  const long long db = static_cast<long long>(b.dx) * b.dx +
                       static_cast<long long>(b.dy) * b.dy;
  if (da != db) return da < db;
  if (a.dy != b.dy) return a.dy < b.dy;
  return a.dx < b.dx;
}

}  // namespace

Offset register_translation(const LabelMask& test_mask,
                            const RasterGrid& test_dsm,
                            const LabelMask& ref_mask,
                            const RasterGrid& ref_dsm, int radius) {
  if (radius < 0)
    throw std::invalid_argument("registration radius must be non-negative");
  if (!resample_check(test_mask.spec(), ref_mask.spec()) ||
      !resample_check(test_dsm.spec, ref_mask.spec()) ||
      !resample_check(ref_dsm.spec, ref_mask.spec())) {
    throw AlignmentError("registration inputs do not share one pixel lattice");
  }

  const auto w = static_cast<long long>(ref_mask.spec().width);
  const auto h = static_cast<long long>(ref_mask.spec().height);

  Candidate best;
  bool have_best = false;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      Candidate cand;
      cand.dx = dx;
      cand.dy = dy;
      std::uint64_t fp = 0, fn = 0;
      for (long long row = 0; row < h; ++row) {
        for (long long col = 0; col < w; ++col) {
          const std::size_t ridx = ref_mask.grid.index(
              static_cast<std::size_t>(col), static_cast<std::size_t>(row));
          if (!ref_mask.known(ridx)) continue;
          const bool truth = ref_mask.positive(ridx);
          const long long sc = col - dx;
          const long long sr = row - dy;
          bool predicted = false;
          if (sc >= 0 && sc < w && sr >= 0 && sr < h) {
            predicted = test_mask.positive(test_mask.grid.index(
                static_cast<std::size_t>(sc), static_cast<std::size_t>(sr)));
          }
          if (predicted && truth) {
            ++cand.tp;
          } else if (predicted) {
            ++fp;
          } else if (truth) {
            ++fn;
          }
        }
      }
      cand.denom = cand.tp + fp + fn;
      if (!have_best || better(cand, best)) {
        best = cand;
        have_best = true;
      }
    }
  }

  // Vertical correction: median of (reference - shifted test) over TP pixels
  // with data in both surfaces.
  std::vector<double> residuals;
  for (long long row = 0; row < h; ++row) {
    for (long long col = 0; col < w; ++col) {
      const std::size_t ridx = ref_mask.grid.index(
          static_cast<std::size_t>(col), static_cast<std::size_t>(row));
      if (!ref_mask.positive(ridx)) continue;
      const long long sc = col - best.dx;
      const long long sr = row - best.dy;
      if (sc < 0 || sc >= w || sr < 0 || sr >= h) continue;
      const std::size_t sidx = test_mask.grid.index(
          static_cast<std::size_t>(sc), static_cast<std::size_t>(sr));
      if (!test_mask.positive(sidx)) continue;
      if (!ref_dsm.valid(ridx) || !test_dsm.valid(sidx)) continue;
      residuals.push_back(ref_dsm.values[ridx] - test_dsm.values[sidx]);
    }
  }

  double dz = 0.0;
  if (!residuals.empty()) {
    std::sort(residuals.begin(), residuals.end());
    const std::size_t n = residuals.size();
    dz = (n % 2 == 1) ? residuals[n / 2]
                      : 0.5 * (residuals[n / 2 - 1] + residuals[n / 2]);
  }
  return Offset{best.dx, best.dy, dz};
}

std::pair<LabelMask, RasterGrid> apply_offset(const LabelMask& mask,
                                              const RasterGrid& dsm,
                                              const Offset& offset) {
  if (!resample_check(mask.spec(), dsm.spec))
    throw AlignmentError("mask and surface do not share one pixel lattice");

  const auto w = static_cast<long long>(mask.spec().width);
  const auto h = static_cast<long long>(mask.spec().height);
  RasterGrid out_mask(mask.spec(), mask.grid.nodata);
  RasterGrid out_dsm(dsm.spec, dsm.nodata);

  for (long long row = 0; row < h; ++row) {
    for (long long col = 0; col < w; ++col) {
      const long long sc = col - offset.dx_pixels;
      const long long sr = row - offset.dy_pixels;
      if (sc < 0 || sc >= w || sr < 0 || sr >= h) continue;
      const std::size_t dst = out_mask.index(static_cast<std::size_t>(col),
                                             static_cast<std::size_t>(row));
      const std::size_t src = out_mask.index(static_cast<std::size_t>(sc),
                                             static_cast<std::size_t>(sr));
      out_mask.values[dst] = mask.grid.values[src];
      out_dsm.values[dst] = dsm.valid(src)
                                ? dsm.values[src] + offset.dz_meters
                                : dsm.values[src];
    }
  }
  return {LabelMask{std::move(out_mask)}, std::move(out_dsm)};
}

}  // namespace cueval
