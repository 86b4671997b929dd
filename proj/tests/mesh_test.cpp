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

#include "cueval/mesh.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "oracles.hpp"

namespace cueval {
namespace {

using testing::TempDir;

TriangleMesh quad(double x0, double y0, double x1, double y1, double z) {
  TriangleMesh m;
  m.vertices = {{x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

void append(TriangleMesh& dst, const TriangleMesh& src) {
  const auto base = static_cast<std::uint32_t>(dst.vertices.size());
  dst.vertices.insert(dst.vertices.end(), src.vertices.begin(),
                      src.vertices.end());
  for (auto t : src.triangles)
    dst.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
}

TEST(Rasterize, ConstantQuadCoversInteriorExactly) {
  const GridSpec spec{6, 6, 0.0, 6.0, 1.0};
  const RasterGrid g = rasterize_mesh(quad(1.0, 1.0, 5.0, 5.0, 10.0), spec);
  std::size_t covered = 0;
  for (std::size_t row = 0; row < 6; ++row) {
    for (std::size_t col = 0; col < 6; ++col) {
      const double x = spec.col_center_x(col);
      const double y = spec.row_center_y(row);
      const bool inside = x > 1.0 && x < 5.0 && y > 1.0 && y < 5.0;
      if (inside) {
        EXPECT_EQ(g.at(col, row), 10.0);  // constant plane: exactly 10
        ++covered;
      } else {
        EXPECT_FALSE(g.valid_at(col, row)) << col << "," << row;
      }
    }
  }
  EXPECT_EQ(covered, 16u);
}

TEST(Rasterize, ClosedEdgesIncludeBoundaryCenters) {
  // Pixel centers that lie exactly on triangle edges or vertices count as
  // covered.
  const GridSpec spec{4, 4, 0.0, 4.0, 1.0};
  const RasterGrid g = rasterize_mesh(quad(0.5, 0.5, 2.5, 2.5, 3.0), spec);
  EXPECT_EQ(g.valid_count(), 9u);  // centers at 0.5, 1.5, 2.5 in both axes
  EXPECT_EQ(g.at(0, 3), 3.0);      // (0.5, 0.5): footprint corner
  EXPECT_EQ(g.at(2, 1), 3.0);      // (2.5, 2.5): opposite corner
}

TEST(Rasterize, RampInterpolatesExactly) {
  // z = x over dyadic coordinates interpolates without rounding.
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {4, 0, 4}, {4, 4, 4}, {0, 4, 0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  const GridSpec spec{4, 4, 0.0, 4.0, 1.0};
  const RasterGrid g = rasterize_mesh(m, spec);
  for (std::size_t row = 0; row < 4; ++row) {
    for (std::size_t col = 0; col < 4; ++col) {
      EXPECT_EQ(g.at(col, row), spec.col_center_x(col));
    }
  }
}

TEST(Rasterize, OverlappingTrianglesKeepMax) {
  TriangleMesh m = quad(0.0, 0.0, 4.0, 4.0, 5.0);
  append(m, quad(0.0, 0.0, 4.0, 4.0, 12.0));
  const GridSpec spec{4, 4, 0.0, 4.0, 1.0};
  const RasterGrid g = rasterize_mesh(m, spec);
  for (double v : g.values) EXPECT_EQ(v, 12.0);
}

TEST(Rasterize, VerticalTrianglesAreSkipped) {
  TriangleMesh wall;
  wall.vertices = {{1, 1, 0}, {3, 1, 0}, {3, 1, 10}, {1, 1, 10}};
  wall.triangles = {{0, 1, 2}, {0, 2, 3}};
  const RasterGrid g = rasterize_mesh(wall, GridSpec{4, 4, 0.0, 4.0, 1.0});
  EXPECT_EQ(g.valid_count(), 0u);
}

TEST(Rasterize, EmptyMeshIsAllNodata) {
  const RasterGrid g = rasterize_mesh(TriangleMesh{},
                                      GridSpec{3, 3, 0.0, 3.0, 1.0}, -1.0);
  EXPECT_EQ(g.valid_count(), 0u);
  for (double v : g.values) EXPECT_EQ(v, -1.0);
}

TEST(Rasterize, TriangleOrderAndWindingDoNotMatter) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xy(0.0, 8.0);
  std::uniform_real_distribution<double> z(0.0, 20.0);
  TriangleMesh m;
  for (int i = 0; i < 30; ++i) {
    const auto base = static_cast<std::uint32_t>(m.vertices.size());
    for (int k = 0; k < 3; ++k) m.vertices.push_back({xy(rng), xy(rng), z(rng)});
    m.triangles.push_back({base, base + 1, base + 2});
  }
  const GridSpec spec{16, 16, 0.0, 8.0, 0.5};
  const RasterGrid a = rasterize_mesh(m, spec);

  TriangleMesh shuffled = m;
  std::shuffle(shuffled.triangles.begin(), shuffled.triangles.end(), rng);
  for (auto& t : shuffled.triangles) std::swap(t[1], t[2]);  // flip winding
  const RasterGrid b = rasterize_mesh(shuffled, spec);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    EXPECT_EQ(a.values[i], b.values[i]) << "pixel " << i;
}

TEST(Rasterize, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xy(-1.0, 9.0);
    std::uniform_real_distribution<double> z(0.0, 20.0);
    std::uniform_int_distribution<int> count(1, 60);
    TriangleMesh m;
    const int tris = count(rng);
    for (int i = 0; i < tris; ++i) {
      const auto base = static_cast<std::uint32_t>(m.vertices.size());
      for (int k = 0; k < 3; ++k)
        m.vertices.push_back({xy(rng), xy(rng), z(rng)});
      m.triangles.push_back({base, base + 1, base + 2});
    }
    const GridSpec spec{16, 16, 0.0, 8.0, 0.5};
    const RasterGrid fast = rasterize_mesh(m, spec);
    const RasterGrid slow = testing::reference_rasterize(m, spec, fast.nodata);
    for (std::size_t i = 0; i < fast.values.size(); ++i) {
      ASSERT_EQ(fast.valid(i), slow.valid(i)) << "seed " << seed << " px " << i;
      if (fast.valid(i))
        EXPECT_NEAR(fast.values[i], slow.values[i], 1e-9)
            << "seed " << seed << " px " << i;
    }
  }
}

TEST(Obj, ReadsVerticesFacesAndFans) {
  TempDir dir;
  const std::string path = dir.file("mesh.obj");
  std::ofstream out(path);
  out << "# comment\r\n"
         "v 0 0 1.5\n"
         "v 4 0 1.5\n"
         "v 4 4 1.5\n"
         "v 0 4 1.5\n"
         "vn 0 0 1\n"
         "vt 0 0\n"
         "usemtl roof\n"
         "f 1/1/1 2/2/1 3/3/1 4/4/1\n"
         "f 1//1 3//1 4//1\n";
  out.close();
  const TriangleMesh m = read_obj(path);
  ASSERT_EQ(m.vertices.size(), 4u);
  ASSERT_EQ(m.triangles.size(), 3u);  // quad fans into two + one extra
  EXPECT_EQ(m.vertices[1][0], 4.0);
  EXPECT_EQ(m.triangles[0][0], 0u);
  EXPECT_EQ(m.triangles[1][2], 3u);
}

TEST(Obj, RejectsBadIndices) {
  TempDir dir;
  const std::string path = dir.file("mesh.obj");

  auto write = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };

  write("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 -3\n");
  try {
    read_obj(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":4:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("negative"), std::string::npos);
  }

  write("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n");
  EXPECT_THROW(read_obj(path), ParseError);

  write("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n");
  EXPECT_THROW(read_obj(path), ParseError);

  write("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n");
  EXPECT_THROW(read_obj(path), ParseError);

  write("v 0 0\n");
  EXPECT_THROW(read_obj(path), ParseError);

  write("v 0 0 zebra\n");
  EXPECT_THROW(read_obj(path), ParseError);
}

TEST(Obj, RoundTripPreservesGeometry) {
  TempDir dir;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  TriangleMesh m;
  for (int i = 0; i < 12; ++i)
    m.vertices.push_back({coord(rng), coord(rng), coord(rng)});
  for (std::uint32_t i = 0; i + 2 < 12; i += 3)
    m.triangles.push_back({i, i + 1, i + 2});
  const std::string path = dir.file("mesh.obj");
  write_obj(m, path);
  const TriangleMesh back = read_obj(path);
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  ASSERT_EQ(back.triangles.size(), m.triangles.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    for (int k = 0; k < 3; ++k)
      EXPECT_EQ(back.vertices[i][k], m.vertices[i][k]);  // 17 digits: exact
  for (std::size_t i = 0; i < m.triangles.size(); ++i)
    EXPECT_EQ(back.triangles[i], m.triangles[i]);
}

TEST(Obj, MissingFileIsIoError) {
  EXPECT_THROW(read_obj("/nonexistent/mesh.obj"), IoError);
}

}  // namespace
}  // namespace cueval
