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

#include "cueval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cueval {

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Vec2 a, b;
};

double point_segment_distance(const Vec2& p, const Segment& s) {
  const double vx = s.b.x - s.a.x;
  const double vy = s.b.y - s.a.y;
  const double wx = p.x - s.a.x;
  const double wy = p.y - s.a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx;
  const double dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

bool contains(const Building& b, double x, double y) {
  return x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1;
}

/// Roof elevation of a building at a footprint point.
double roof_z(const Building& b, double x, double y) {
  switch (b.roof) {
    case RoofKind::kFlat:
      return b.eave_height;
    case RoofKind::kShed:
      return b.ridge_axis == RidgeAxis::kAxisY
                 ? b.eave_height + b.pitch * (x - b.x0)
                 : b.eave_height + b.pitch * (y - b.y0);
    case RoofKind::kGable:
      if (b.ridge_axis == RidgeAxis::kAxisY) {
        const double half = 0.5 * (b.x1 - b.x0);
        return b.eave_height +
               b.pitch * (half - std::abs(x - 0.5 * (b.x0 + b.x1)));
      } else {
        const double half = 0.5 * (b.y1 - b.y0);
        return b.eave_height +
               b.pitch * (half - std::abs(y - 0.5 * (b.y0 + b.y1)));
      }
    case RoofKind::kHip:
      return b.eave_height +
             b.pitch * std::min(std::min(x - b.x0, b.x1 - x),
                                std::min(y - b.y0, b.y1 - y));
  }
  return b.eave_height;
}

/// Unit upward normal of the roof face under a footprint point. On a crease
/// the assignment is an arbitrary side; callers mark those pixels invalid.
std::array<double, 3> roof_normal(const Building& b, double x, double y) {
  double gx = 0.0, gy = 0.0;  // surface gradient (dz/dx, dz/dy)
  switch (b.roof) {
    case RoofKind::kFlat:
      break;
    case RoofKind::kShed:
      if (b.ridge_axis == RidgeAxis::kAxisY) {
        gx = b.pitch;
      } else {
        gy = b.pitch;
      }
      break;
    case RoofKind::kGable:
      if (b.ridge_axis == RidgeAxis::kAxisY) {
        gx = x < 0.5 * (b.x0 + b.x1) ? b.pitch : -b.pitch;
      } else {
        gy = y < 0.5 * (b.y0 + b.y1) ? b.pitch : -b.pitch;
      }
      break;
    case RoofKind::kHip: {
      const double dw = x - b.x0;
      const double de = b.x1 - x;
      const double ds = y - b.y0;
      const double dn = b.y1 - y;
      const double dmin = std::min(std::min(dw, de), std::min(ds, dn));
      if (dmin == dw) {
        gx = b.pitch;
      } else if (dmin == de) {
        gx = -b.pitch;
      } else if (dmin == ds) {
        gy = b.pitch;
      } else {
        gy = -b.pitch;
      }
      break;
    }
  }
  const double norm = std::sqrt(gx * gx + gy * gy + 1.0);
  return {-gx / norm, -gy / norm, 1.0 / norm};
}

void push_triangle(TriangleMesh& mesh, const std::array<double, 3>& a,
                   const std::array<double, 3>& b,
                   const std::array<double, 3>& c) {
  const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back(a);
  mesh.vertices.push_back(b);
  mesh.vertices.push_back(c);
  mesh.triangles.push_back({base, base + 1, base + 2});
}

void push_quad(TriangleMesh& mesh, const std::array<double, 3>& a,
               const std::array<double, 3>& b, const std::array<double, 3>& c,
               const std::array<double, 3>& d) {
  push_triangle(mesh, a, b, c);
  push_triangle(mesh, a, c, d);
}

void append_roof(TriangleMesh& mesh, const Building& b) {
  auto v = [&](double x, double y) -> std::array<double, 3> {
    return {x, y, roof_z(b, x, y)};
  };
  switch (b.roof) {
    case RoofKind::kFlat:
    case RoofKind::kShed:
      // One planar quad: z is constant or linear across the footprint.
      push_quad(mesh, v(b.x0, b.y0), v(b.x1, b.y0), v(b.x1, b.y1),
                v(b.x0, b.y1));
      break;
    case RoofKind::kGable:
      if (b.ridge_axis == RidgeAxis::kAxisY) {
        const double xm = 0.5 * (b.x0 + b.x1);
        push_quad(mesh, v(b.x0, b.y0), v(xm, b.y0), v(xm, b.y1), v(b.x0, b.y1));
        push_quad(mesh, v(xm, b.y0), v(b.x1, b.y0), v(b.x1, b.y1), v(xm, b.y1));
      } else {
        const double ym = 0.5 * (b.y0 + b.y1);
        push_quad(mesh, v(b.x0, b.y0), v(b.x1, b.y0), v(b.x1, ym), v(b.x0, ym));
        push_quad(mesh, v(b.x0, ym), v(b.x1, ym), v(b.x1, b.y1), v(b.x0, b.y1));
      }
      break;
    case RoofKind::kHip: {
      // The ridge runs along the long footprint axis, inset by half the
      // short side from both ends; on a square footprint it degenerates to
      // the center point and the trapezoids below collapse to triangles.
      const double w = b.x1 - b.x0;
      const double h = b.y1 - b.y0;
      if (w >= h) {
        const double inset = 0.5 * h;
        const double ym = 0.5 * (b.y0 + b.y1);
        const auto ra = v(b.x0 + inset, ym);
        const auto rb = v(b.x1 - inset, ym);
        push_quad(mesh, v(b.x0, b.y0), v(b.x1, b.y0), rb, ra);  // south face
        push_quad(mesh, v(b.x1, b.y1), v(b.x0, b.y1), ra, rb);  // north face
        push_triangle(mesh, v(b.x0, b.y0), ra, v(b.x0, b.y1));  // west face
        push_triangle(mesh, v(b.x1, b.y0), v(b.x1, b.y1), rb);  // east face
      } else {
        const double inset = 0.5 * w;
        const double xm = 0.5 * (b.x0 + b.x1);
        const auto ra = v(xm, b.y0 + inset);
        const auto rb = v(xm, b.y1 - inset);
        push_quad(mesh, v(b.x0, b.y0), v(b.x0, b.y1), rb, ra);  // west face
        push_quad(mesh, v(b.x1, b.y1), v(b.x1, b.y0), ra, rb);  // east face
        push_triangle(mesh, v(b.x0, b.y0), ra, v(b.x1, b.y0));  // south face
        push_triangle(mesh, v(b.x0, b.y1), v(b.x1, b.y1), rb);  // north face
      }
      break;
    }
  }
}

void append_walls(TriangleMesh& mesh, const Building& b, double ground) {
  const Vec2 corners[4] = {
      {b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
  for (int k = 0; k < 4; ++k) {
    const Vec2& p = corners[k];
    const Vec2& q = corners[(k + 1) % 4];
    // Vertical quads: zero projected area, so the rasterizer skips them,
    // but they make the exported mesh a sensible solid.
    push_quad(mesh, {p.x, p.y, ground}, {q.x, q.y, ground},
              {q.x, q.y, roof_z(b, q.x, q.y)}, {p.x, p.y, roof_z(b, p.x, p.y)});
  }
}

void append_creases(std::vector<Segment>& creases, const Building& b) {
  // Footprint edges: roof meets wall meets ground.
  creases.push_back({{b.x0, b.y0}, {b.x1, b.y0}});
  creases.push_back({{b.x1, b.y0}, {b.x1, b.y1}});
  creases.push_back({{b.x1, b.y1}, {b.x0, b.y1}});
  creases.push_back({{b.x0, b.y1}, {b.x0, b.y0}});
  if (b.roof == RoofKind::kGable) {
    if (b.ridge_axis == RidgeAxis::kAxisY) {
      const double xm = 0.5 * (b.x0 + b.x1);
      creases.push_back({{xm, b.y0}, {xm, b.y1}});
    } else {
      const double ym = 0.5 * (b.y0 + b.y1);
      creases.push_back({{b.x0, ym}, {b.x1, ym}});
    }
  } else if (b.roof == RoofKind::kHip) {
    const double w = b.x1 - b.x0;
    const double h = b.y1 - b.y0;
    Vec2 ra, rb;
    if (w >= h) {
      const double ym = 0.5 * (b.y0 + b.y1);
      ra = {b.x0 + 0.5 * h, ym};
      rb = {b.x1 - 0.5 * h, ym};
      creases.push_back({{b.x0, b.y0}, ra});
      creases.push_back({{b.x0, b.y1}, ra});
      creases.push_back({{b.x1, b.y0}, rb});
      creases.push_back({{b.x1, b.y1}, rb});
    } else {
      const double xm = 0.5 * (b.x0 + b.x1);
      ra = {xm, b.y0 + 0.5 * w};
      rb = {xm, b.y1 - 0.5 * w};
      creases.push_back({{b.x0, b.y0}, ra});
      creases.push_back({{b.x1, b.y0}, ra});
      creases.push_back({{b.x0, b.y1}, rb});
      creases.push_back({{b.x1, b.y1}, rb});
    }
    creases.push_back({ra, rb});
  }
}

void validate(const SceneSpec& spec) {
  const GridSpec& g = spec.grid;
  if (g.width == 0 || g.height == 0)
    throw ParseError("scene grid must be non-empty");
  if (!(g.cell_size > 0.0))
    throw ParseError("scene grid cell size must be positive");
  if (!(spec.noise_sigma >= 0.0))
    throw ParseError("noise sigma must be non-negative");
  if (!(spec.truth_margin_m >= 0.0))
    throw ParseError("truth margin must be non-negative");

  const double x_min = g.origin_x;
  const double x_max = g.origin_x + static_cast<double>(g.width) * g.cell_size;
  const double y_max = g.origin_y;
  const double y_min = g.origin_y - static_cast<double>(g.height) * g.cell_size;
  for (std::size_t i = 0; i < spec.buildings.size(); ++i) {
    const Building& b = spec.buildings[i];
    const std::string tag = "building " + std::to_string(i);
    if (!(b.x1 > b.x0 && b.y1 > b.y0))
      throw ParseError(tag + ": footprint must have positive extent");
    if (b.x0 < x_min || b.x1 > x_max || b.y0 < y_min || b.y1 > y_max)
      throw ParseError(tag + ": footprint leaves the grid extent");
    if (!(b.eave_height > spec.ground_elevation))
      throw ParseError(tag + ": eave height must be above ground");
    if (!(b.pitch >= 0.0)) throw ParseError(tag + ": pitch must be >= 0");
    for (std::size_t j = i + 1; j < spec.buildings.size(); ++j) {
      const Building& o = spec.buildings[j];
      const bool disjoint =
          b.x1 < o.x0 || o.x1 < b.x0 || b.y1 < o.y0 || o.y1 < b.y0;
      if (!disjoint)
        throw ParseError(tag + " and building " + std::to_string(j) +
                         " have intersecting footprints");
    }
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

double gaussian_sample(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t a = mix64(seed + 0x9E3779B97F4A7C15ull * (2 * counter + 1));
  const std::uint64_t b = mix64(seed + 0x9E3779B97F4A7C15ull * (2 * counter + 2));
  const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;          // [0,1)
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Scene generate(const SceneSpec& spec) {
  validate(spec);
  const GridSpec& g = spec.grid;

  Scene scene;
  // Mesh: one ground slab spanning the grid extent, then roofs and walls.
  const double x_min = g.origin_x;
  const double x_max = g.origin_x + static_cast<double>(g.width) * g.cell_size;
  const double y_max = g.origin_y;
  const double y_min = g.origin_y - static_cast<double>(g.height) * g.cell_size;
  push_quad(scene.mesh, {x_min, y_min, spec.ground_elevation},
            {x_max, y_min, spec.ground_elevation},
            {x_max, y_max, spec.ground_elevation},
            {x_min, y_max, spec.ground_elevation});
  std::vector<Segment> creases;
  for (const Building& b : spec.buildings) {
    append_roof(scene.mesh, b);
    append_walls(scene.mesh, b, spec.ground_elevation);
    append_creases(creases, b);
  }

  // Surface: sample the mesh itself so the raster and mesh descriptions of
  // the scene agree by construction, then perturb.
  scene.dsm = rasterize_mesh(scene.mesh, g);
  if (spec.noise_sigma > 0.0) {
    for (std::size_t i = 0; i < scene.dsm.values.size(); ++i) {
      if (scene.dsm.valid(i))
        scene.dsm.values[i] += spec.noise_sigma * gaussian_sample(spec.seed, i);
    }
  }

  // Footprint mask and analytic truth normals.
  RasterGrid mask_grid(g, kDefaultNodata);
  scene.truth_normals.spec = g;
  scene.truth_normals.samples.resize(g.size());
  for (std::size_t row = 0; row < g.height; ++row) {
    const double y = g.row_center_y(row);
    for (std::size_t col = 0; col < g.width; ++col) {
      const double x = g.col_center_x(col);
      const std::size_t idx = row * g.width + col;

      const Building* owner = nullptr;
      for (const Building& b : spec.buildings) {
        if (contains(b, x, y)) {
          owner = &b;
          break;
        }
      }
      mask_grid.values[idx] = owner ? 1.0 : 0.0;

      NormalSample& s = scene.truth_normals.samples[idx];
      const std::array<double, 3> n =
          owner ? roof_normal(*owner, x, y)
                : std::array<double, 3>{0.0, 0.0, 1.0};
      s.nx = n[0];
      s.ny = n[1];
      s.nz = n[2];
      double crease_dist = std::numeric_limits<double>::infinity();
      for (const Segment& seg : creases) {
        crease_dist = std::min(crease_dist, point_segment_distance({x, y}, seg));
      }
      s.valid = crease_dist >= spec.truth_margin_m;
    }
  }
  scene.mask = LabelMask{std::move(mask_grid)};
  return scene;
}

}  // namespace cueval
