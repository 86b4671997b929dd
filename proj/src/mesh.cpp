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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cueval {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

TriangleMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4) fail("vertex record needs three coordinates");
      std::array<double, 3> v;
      for (int k = 0; k < 3; ++k) {
        const auto t = tokens[k + 1];
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v[k]);
        if (ec != std::errc() || ptr != t.data() + t.size())
          fail("bad vertex coordinate '" + std::string(t) + "'");
      }
      mesh.vertices.push_back(v);
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) fail("face record needs at least three vertices");
      std::vector<std::uint32_t> idx;
      idx.reserve(tokens.size() - 1);
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        // Keep only the vertex index of "v", "v/vt", "v//vn" or "v/vt/vn".
        std::string_view t = tokens[k];
        const std::size_t slash = t.find('/');
        if (slash != std::string_view::npos) t = t.substr(0, slash);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size())
          fail("bad face index '" + std::string(tokens[k]) + "'");
        if (value < 0) fail("negative (relative) face indices are unsupported");
        if (value == 0 ||
            static_cast<std::size_t>(value) > mesh.vertices.size())
          fail("face index " + std::to_string(value) + " is out of range");
        idx.push_back(static_cast<std::uint32_t>(value - 1));
      }
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
      }
    }
    // Every other record type (vn, vt, o, g, s, usemtl, mtllib, ...) is
    // irrelevant for a 2.5D surface and silently skipped.
  }
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return mesh;
}

void write_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char buf[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof(buf), "f %u %u %u\n", t[0] + 1, t[1] + 1,
                  t[2] + 1);
    out << buf;
  }
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

RasterGrid rasterize_mesh(const TriangleMesh& mesh, const GridSpec& spec,
                          double nodata) {
  RasterGrid out(spec, nodata);
  if (spec.size() == 0) return out;

  const double cs = spec.cell_size;
  const auto w = static_cast<long long>(spec.width);
  const auto h = static_cast<long long>(spec.height);

  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (tri[k] >= mesh.vertices.size())
        throw ParseError("triangle references vertex " +
                         std::to_string(tri[k]) + " beyond vertex count " +
                         std::to_string(mesh.vertices.size()));
    }
    std::array<double, 3> a = mesh.vertices[tri[0]];
    std::array<double, 3> b = mesh.vertices[tri[1]];
    std::array<double, 3> c = mesh.vertices[tri[2]];

    double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (area2 == 0.0) continue;  // vertical or degenerate: no top surface
    if (area2 < 0.0) {
      std::swap(b, c);  // orient CCW so all edge functions are >= 0 inside
      area2 = -area2;
    }

    const double xmin = std::min({a[0], b[0], c[0]});
    const double xmax = std::max({a[0], b[0], c[0]});
    const double ymin = std::min({a[1], b[1], c[1]});
    const double ymax = std::max({a[1], b[1], c[1]});

    // Conservative pixel bounding box; the exact edge test below decides.
    long long c0 = static_cast<long long>(
        std::floor((xmin - spec.origin_x) / cs - 0.5));
    long long c1 = static_cast<long long>(
        std::ceil((xmax - spec.origin_x) / cs - 0.5));
    long long r0 = static_cast<long long>(
        std::floor((spec.origin_y - ymax) / cs - 0.5));
    long long r1 = static_cast<long long>(
        std::ceil((spec.origin_y - ymin) / cs - 0.5));
    c0 = std::max(c0, 0LL);
    r0 = std::max(r0, 0LL);
    c1 = std::min(c1, w - 1);
    r1 = std::min(r1, h - 1);

    for (long long row = r0; row <= r1; ++row) {
      const double py = spec.row_center_y(static_cast<std::size_t>(row));
      for (long long col = c0; col <= c1; ++col) {
        const double px = spec.col_center_x(static_cast<std::size_t>(col));
        const double e0 =
            (c[0] - b[0]) * (py - b[1]) - (c[1] - b[1]) * (px - b[0]);
        const double e1 =
            (a[0] - c[0]) * (py - c[1]) - (a[1] - c[1]) * (px - c[0]);
        const double e2 =
            (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
        if (e0 < 0.0 || e1 < 0.0 || e2 < 0.0) continue;
        const double w1 = e1 / area2;
        const double w2 = e2 / area2;
        const double z = a[2] + w1 * (b[2] - a[2]) + w2 * (c[2] - a[2]);
        const std::size_t idx = out.index(static_cast<std::size_t>(col),
                                          static_cast<std::size_t>(row));
        if (!out.valid(idx) || z > out.values[idx]) out.values[idx] = z;
      }
    }
  }
  return out;
}

}  // namespace cueval
