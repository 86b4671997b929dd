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

#include <array>
#include <string>
#include <vector>

#include "cueval/raster.hpp"

namespace cueval {

/// Eigendecomposition of a symmetric 3x3 matrix. `values` are sorted in
/// descending order; `vectors[i]` is the unit eigenvector paired with
/// `values[i]` and the three vectors are orthonormal.
struct EigenSym3 {
  std::array<double, 3> values{};
  std::array<std::array<double, 3>, 3> vectors{};
};

/// Cyclic Jacobi eigensolver for symmetric 3x3 matrices. The input must be
/// symmetric within 1e-12 (only the upper triangle is read). Sweeps stop
/// once the off-diagonal mass drops below 1e-13 * |trace|, capped at 50
/// sweeps, which lands well below 1e-9 absolute error for well-scaled input.
EigenSym3 eigen_sym3(const std::array<std::array<double, 3>, 3>& m);

/// Per-pixel surface normal estimate with the covariance eigenvalues the
/// planarity gate needs. Normals are unit length and oriented upward
/// (nz >= 0). Eigenvalues are clamped to be non-negative and sorted
/// descending.
struct NormalSample {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  bool valid = false;
};

struct NormalField {
  GridSpec spec;
  std::vector<NormalSample> samples;

  const NormalSample& at(std::size_t col, std::size_t row) const {
    return samples[row * spec.width + col];
  }
  NormalSample& at(std::size_t col, std::size_t row) {
    return samples[row * spec.width + col];
  }
};

/// Estimates a normal per pixel by eigendecomposition of the covariance of
/// all valid surface points within Euclidean XY distance `radius_m`
/// (inclusive) of the pixel center. The normal is the eigenvector of the
/// smallest eigenvalue. A pixel gets an invalid sample when its own surface
/// sample is nodata or fewer than `min_points` window points are valid.
/// Requires radius_m > 0 and min_points >= 3.
NormalField compute_normals(const RasterGrid& dsm, double radius_m = 3.0,
                            int min_points = 6);

/// Marks normals invalid where the covariance eigenvalues say the window is
/// not a single plane: a sample stays valid iff
///   lambda3 / (lambda1 + lambda2 + lambda3) < 0.005   (surface-ness), and
///   (lambda2 - lambda3) / lambda1 > 0.2               (not edge-like).
/// A zero eigenvalue sum satisfies the first constraint by convention; a
/// zero lambda1 fails the second. Never turns an invalid sample valid.
NormalField planarity_gate(const NormalField& field);

/// Angle between two unit vectors in degrees, clamped against rounding just
/// outside [-1, 1]. Throws std::invalid_argument if either norm is off unit
/// by more than 1e-6.
double angle_between(const std::array<double, 3>& u,
                     const std::array<double, 3>& v);

/// Slope of a normal in degrees from vertical (0 = flat, 90 = wall).
double slope_angle_deg(const NormalSample& s);

/// Debug rasters: per-pixel slope in degrees (nodata where invalid) and a
/// 0/1 validity mask.
RasterGrid slope_raster(const NormalField& field,
                        double nodata = kDefaultNodata);
RasterGrid validity_raster(const NormalField& field);

}  // namespace cueval
