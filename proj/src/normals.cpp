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

#include "cueval/normals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cueval {

namespace {

// One Jacobi rotation that annihilates a[p][q], with the eigenvector
// accumulator updated in lockstep (columns of v are the eigenvectors).
void jacobi_rotate(std::array<std::array<double, 3>, 3>& a,
                   std::array<std::array<double, 3>, 3>& v, int p, int q) {
  const double apq = a[p][q];
  if (apq == 0.0) return;
  const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
  const double t =
      std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a[p][p] -= t * apq;
  a[q][q] += t * apq;
  a[p][q] = a[q][p] = 0.0;
  const int r = 3 - p - q;  // the remaining index
  {
    const double arp = a[r][p];
    const double arq = a[r][q];
    a[r][p] = a[p][r] = arp - s * (arq + tau * arp);
    a[r][q] = a[q][r] = arq + s * (arp - tau * arq);
  }
  for (int i = 0; i < 3; ++i) {
    const double vip = v[i][p];
    const double viq = v[i][q];
    v[i][p] = vip - s * (viq + tau * vip);
    v[i][q] = viq + s * (vip - tau * viq);
  }
}

}  // namespace

EigenSym3 eigen_sym3(const std::array<std::array<double, 3>, 3>& m) {
  const double scale = std::max({std::abs(m[0][0]), std::abs(m[1][1]),
                                 std::abs(m[2][2]), std::abs(m[0][1]),
                                 std::abs(m[0][2]), std::abs(m[1][2]), 1.0});
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(m[i][j] - m[j][i]) > 1e-12 * scale)
        throw std::invalid_argument("eigen_sym3: input is not symmetric");
    }
  }

  // Work on a symmetrized copy so tiny asymmetries cannot leak through.
  std::array<std::array<double, 3>, 3> a = m;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double s = 0.5 * (m[i][j] + m[j][i]);
      a[i][j] = a[j][i] = s;
    }
  }
  std::array<std::array<double, 3>, 3> v = {
      {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

  const double trace = a[0][0] + a[1][1] + a[2][2];
  const double threshold = 1e-13 * std::abs(trace);
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off =
        std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off <= threshold) break;
    jacobi_rotate(a, v, 0, 1);
    jacobi_rotate(a, v, 0, 2);
    jacobi_rotate(a, v, 1, 2);
  }

  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i][i] > a[j][j]; });

  EigenSym3 out;
  for (int k = 0; k < 3; ++k) {
    const int src = order[k];
    out.values[k] = a[src][src];
    out.vectors[k] = {v[0][src], v[1][src], v[2][src]};
  }
  return out;
}

NormalField compute_normals(const RasterGrid& dsm, double radius_m,
                            int min_points) {
  if (!(radius_m > 0.0))
    throw std::invalid_argument("compute_normals: radius must be positive");
  if (min_points < 3)
    throw std::invalid_argument("compute_normals: min_points must be >= 3");

  const GridSpec& spec = dsm.spec;
  const double cs = spec.cell_size;
  NormalField field;
  field.spec = spec;
  field.samples.resize(spec.size());

  // Precompute the disk of lattice offsets once; membership uses the exact
  // Euclidean distance between pixel centers.
  const int reach = static_cast<int>(std::floor(radius_m / cs)) + 1;
  struct Off {
    int di, dj;
    double dx, dy;
  };
  std::vector<Off> window;
  const double r2 = radius_m * radius_m;
  for (int di = -reach; di <= reach; ++di) {
    for (int dj = -reach; dj <= reach; ++dj) {
      const double dx = dj * cs;
      const double dy = -di * cs;  // +row goes south
      if (dx * dx + dy * dy <= r2) window.push_back({di, dj, dx, dy});
    }
  }

  const auto w = static_cast<long long>(spec.width);
  const auto h = static_cast<long long>(spec.height);
  for (long long row = 0; row < h; ++row) {
    for (long long col = 0; col < w; ++col) {
      const std::size_t idx = static_cast<std::size_t>(row) * spec.width +
                              static_cast<std::size_t>(col);
      NormalSample& s = field.samples[idx];
      if (!dsm.valid(idx)) continue;  // stays invalid
      const double z0 = dsm.values[idx];

      // Accumulate raw moments of (dx, dy, dz) relative to this pixel's
      // sample; the covariance is shift-invariant, so the local frame keeps
      // the sums small and exact for lattice coordinates.
      double n = 0;
      double sx = 0, sy = 0, sz = 0;
      double sxx = 0, sxy = 0, sxz = 0, syy = 0, syz = 0, szz = 0;
      for (const Off& o : window) {
        const long long r = row + o.di;
        const long long c = col + o.dj;
        if (r < 0 || r >= h || c < 0 || c >= w) continue;
        const std::size_t nidx = static_cast<std::size_t>(r) * spec.width +
                                 static_cast<std::size_t>(c);
        if (!dsm.valid(nidx)) continue;
        const double dz = dsm.values[nidx] - z0;
        n += 1.0;
        sx += o.dx;
        sy += o.dy;
        sz += dz;
        sxx += o.dx * o.dx;
        sxy += o.dx * o.dy;
        sxz += o.dx * dz;
        syy += o.dy * o.dy;
        syz += o.dy * dz;
        szz += dz * dz;
      }
      if (n < min_points) continue;

      const double mx = sx / n, my = sy / n, mz = sz / n;
      const std::array<std::array<double, 3>, 3> cov = {
          {{sxx / n - mx * mx, sxy / n - mx * my, sxz / n - mx * mz},
           {sxy / n - mx * my, syy / n - my * my, syz / n - my * mz},
           {sxz / n - mx * mz, syz / n - my * mz, szz / n - mz * mz}}};
      const EigenSym3 eig = eigen_sym3(cov);

      s.lambda1 = std::max(eig.values[0], 0.0);
      s.lambda2 = std::max(eig.values[1], 0.0);
      s.lambda3 = std::max(eig.values[2], 0.0);

      double nx = eig.vectors[2][0];
      double ny = eig.vectors[2][1];
      double nz = eig.vectors[2][2];
      if (nz < 0.0 || (nz == 0.0 && (nx < 0.0 || (nx == 0.0 && ny < 0.0)))) {
        nx = -nx;
        ny = -ny;
        nz = -nz;
      }
      const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
      s.nx = nx / norm;
      s.ny = ny / norm;
      s.nz = nz / norm;
      s.valid = true;
    }
  }
  return field;
}

NormalField planarity_gate(const NormalField& field) {
  NormalField out = field;
  for (NormalSample& s : out.samples) {
    if (!s.valid) continue;
    const double sum = s.lambda1 + s.lambda2 + s.lambda3;
    const bool surface_like = sum <= 0.0 || s.lambda3 / sum < 0.005;
    const bool plane_like =
        s.lambda1 > 0.0 && (s.lambda2 - s.lambda3) / s.lambda1 > 0.2;
    s.valid = surface_like && plane_like;
  }
  return out;
}

double angle_between(const std::array<double, 3>& u,
                     const std::array<double, 3>& v) {
  auto norm = [](const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  };
  if (std::abs(norm(u) - 1.0) > 1e-6 || std::abs(norm(v) - 1.0) > 1e-6)
    throw std::invalid_argument("angle_between: inputs must be unit vectors");
  if (u == v) return 0.0;  // exact, even when |u| rounds slightly off 1
  const double dot =
      std::clamp(u[0] * v[0] + u[1] * v[1] + u[2] * v[2], -1.0, 1.0);
  return std::acos(dot) * 180.0 / std::numbers::pi;
}

double slope_angle_deg(const NormalSample& s) {
  const double nz = std::clamp(s.nz, -1.0, 1.0);
  return std::acos(nz) * 180.0 / std::numbers::pi;
}

RasterGrid slope_raster(const NormalField& field, double nodata) {
  GridSpec spec = field.spec;
  RasterGrid out(spec, nodata);
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    if (field.samples[i].valid) out.values[i] = slope_angle_deg(field.samples[i]);
  }
  return out;
}

RasterGrid validity_raster(const NormalField& field) {
  GridSpec spec = field.spec;
  RasterGrid out(spec, kDefaultNodata);
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    out.values[i] = field.samples[i].valid ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace cueval
