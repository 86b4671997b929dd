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

#include "cueval/raster.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>

#include "oracles.hpp"

namespace cueval {
namespace {

using testing::TempDir;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  ASSERT_TRUE(out.is_open());
  out << text;
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

void expect_bit_identical(const RasterGrid& a, const RasterGrid& b) {
  ASSERT_EQ(a.spec, b.spec);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.nodata),
            std::bit_cast<std::uint64_t>(b.nodata));
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.values[i]),
              std::bit_cast<std::uint64_t>(b.values[i]))
        << "sample " << i;
  }
}

TEST(AsciiGrid, HeaderEcho) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 4\n"
             "nrows 3\n"
             "xllcorner 2.5\n"
             "yllcorner -1\n"
             "cellsize 0.5\n"
             "NODATA_value -9999\n"
             "1 2 3 4\n"
             "5 6 7 8\n"
             "9 10 11 12\n");
  const RasterGrid g = read_raster(path, RasterFormat::kAsciiGrid);
  EXPECT_EQ(g.spec.width, 4u);
  EXPECT_EQ(g.spec.height, 3u);
  EXPECT_DOUBLE_EQ(g.spec.origin_x, 2.5);
  // yllcorner is the *south* edge; the origin is the north-west corner.
  EXPECT_DOUBLE_EQ(g.spec.origin_y, -1.0 + 3 * 0.5);
  EXPECT_DOUBLE_EQ(g.spec.cell_size, 0.5);
  EXPECT_DOUBLE_EQ(g.nodata, -9999.0);
  // Row 0 is the northernmost row, in file order.
  EXPECT_DOUBLE_EQ(g.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(g.at(3, 0), 4.0);
  EXPECT_DOUBLE_EQ(g.at(0, 2), 9.0);
  EXPECT_DOUBLE_EQ(g.at(3, 2), 12.0);
}

TEST(AsciiGrid, MissingNodataKeyDefaults) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "7\n");
  const RasterGrid g = read_raster(path, RasterFormat::kAsciiGrid);
  EXPECT_DOUBLE_EQ(g.nodata, -9999.0);
  EXPECT_DOUBLE_EQ(g.at(0, 0), 7.0);
}

TEST(AsciiGrid, SampleCountMismatchTooFew) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 4\nnrows 4\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "NODATA_value -9999\n"
             "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15\n");
  try {
    read_raster(path, RasterFormat::kAsciiGrid);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("sample count mismatch"),
              std::string::npos);
    EXPECT_NE(std::string(e.what()).find("16"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("15"), std::string::npos);
  }
}

TEST(AsciiGrid, SampleCountMismatchTooMany) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "1 2 3 4 5\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);
}

TEST(AsciiGrid, MalformedHeader) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path, "ncols 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);

  write_text(path,
             "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "wibble 3\n1\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);

  write_text(path,
             "ncols 1\nnrows 1\nncols 1\nxllcorner 0\nyllcorner 0\n"
             "cellsize 1\n1\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);

  write_text(path, "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 0\n1\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);

  write_text(path, "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize x\n1\n");
  EXPECT_THROW(read_raster(path, RasterFormat::kAsciiGrid), ParseError);
}

TEST(AsciiGrid, NonSquareCellsRejected) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ndx 1\ndy 2\n1\n");
  try {
    read_raster(path, RasterFormat::kAsciiGrid);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("non-square"), std::string::npos);
  }
}

TEST(AsciiGrid, ErrorNamesLine) {
  TempDir dir;
  const std::string path = dir.file("grid.asc");
  write_text(path,
             "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "1 oops\n");
  try {
    read_raster(path, RasterFormat::kAsciiGrid);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":6:"), std::string::npos)
        << e.what();
  }
}

TEST(AsciiGrid, RoundTripIsBitExact) {
  TempDir dir;
  GridSpec spec{3, 2, -12.25, 7.75, 0.1};
  RasterGrid g(spec, kDefaultNodata);
  g.values = {0.1, 1.0 / 3.0, -9999.0, 1e-300, -1.7e308, 42.0};
  const std::string path = dir.file("grid.asc");
  write_raster(g, path, RasterFormat::kAsciiGrid);
  expect_bit_identical(read_raster(path, RasterFormat::kAsciiGrid), g);
}

TEST(BinaryGrid, RoundTripIsBitExact) {
  TempDir dir;
  GridSpec spec{2, 2, 100.0, 250.0, 0.5};
  RasterGrid g(spec, -1.0);
  g.values = {0.1, -0.0, std::numeric_limits<double>::min(), -1.0};
  const std::string path = dir.file("grid.cevg");
  write_raster(g, path, RasterFormat::kBinaryGrid);
  expect_bit_identical(read_raster(path, RasterFormat::kBinaryGrid), g);
}

TEST(BinaryGrid, RandomRoundTripProperty) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    TempDir dir;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 17);
    GridSpec spec{static_cast<std::size_t>(dim(rng)),
                  static_cast<std::size_t>(dim(rng)), 0.0, 0.0, 0.5};
    std::uniform_real_distribution<double> origin(-1e5, 1e5);
    spec.origin_x = origin(rng);
    spec.origin_y = origin(rng);
    RasterGrid g(spec);
    std::uniform_real_distribution<double> z(-5000.0, 5000.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : g.values) {
      if (u(rng) < 0.15) continue;  // keep the nodata fill
      v = z(rng);
    }
    for (RasterFormat format :
         {RasterFormat::kAsciiGrid, RasterFormat::kBinaryGrid}) {
      const std::string path = dir.file(
          format == RasterFormat::kAsciiGrid ? "g.asc" : "g.cevg");
      write_raster(g, path, format);
      const RasterGrid back = read_raster(path, format);
      expect_bit_identical(back, g);
      EXPECT_EQ(back.valid_count(), g.valid_count());
    }
  }
}

TEST(BinaryGrid, BadMagicRejected) {
  TempDir dir;
  const std::string path = dir.file("grid.cevg");
  RasterGrid g(GridSpec{2, 2, 0, 0, 1});
  write_raster(g, path, RasterFormat::kBinaryGrid);
  std::string bytes = read_bytes(path);
  bytes[0] = 'X';
  write_text(path, bytes);
  try {
    read_raster(path, RasterFormat::kBinaryGrid);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("magic"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("offset 0"), std::string::npos);
  }
}

TEST(BinaryGrid, TruncatedAndOversizedRejected) {
  TempDir dir;
  const std::string path = dir.file("grid.cevg");
  RasterGrid g(GridSpec{2, 2, 0, 0, 1});
  write_raster(g, path, RasterFormat::kBinaryGrid);
  std::string bytes = read_bytes(path);

  write_text(path, bytes.substr(0, bytes.size() - 8));
  EXPECT_THROW(read_raster(path, RasterFormat::kBinaryGrid), ParseError);

  write_text(path, bytes + std::string(8, '\0'));
  EXPECT_THROW(read_raster(path, RasterFormat::kBinaryGrid), ParseError);

  write_text(path, bytes.substr(0, 10));
  EXPECT_THROW(read_raster(path, RasterFormat::kBinaryGrid), ParseError);
}

TEST(BinaryGrid, UnknownVersionRejected) {
  TempDir dir;
  const std::string path = dir.file("grid.cevg");
  RasterGrid g(GridSpec{1, 1, 0, 0, 1});
  write_raster(g, path, RasterFormat::kBinaryGrid);
  std::string bytes = read_bytes(path);
  bytes[4] = 2;
  write_text(path, bytes);
  EXPECT_THROW(read_raster(path, RasterFormat::kBinaryGrid), ParseError);
}

TEST(RasterGrid, ValidityIsBitPatternBased) {
  RasterGrid g(GridSpec{4, 1, 0, 0, 1}, -9999.0);
  g.values = {-9999.0, std::numeric_limits<double>::quiet_NaN(),
              std::numeric_limits<double>::infinity(), -9998.999999};
  EXPECT_FALSE(g.valid(0));  // sentinel
  EXPECT_FALSE(g.valid(1));  // NaN is never data
  EXPECT_FALSE(g.valid(2));  // infinity is never data
  EXPECT_TRUE(g.valid(3));   // close to the sentinel is still data
  EXPECT_EQ(g.valid_count(), 1u);
}

TEST(RasterGrid, NanSentinelAllowsNegative9999) {
  RasterGrid g(GridSpec{2, 1, 0, 0, 1},
               std::numeric_limits<double>::quiet_NaN());
  g.values = {-9999.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_TRUE(g.valid(0));
  EXPECT_FALSE(g.valid(1));
}

TEST(ResampleCheck, AcceptsTinyOriginDrift) {
  GridSpec a{100, 50, 1000.0, 2000.0, 0.5};
  GridSpec b = a;
  b.origin_x += 1e-12;
  b.origin_y -= 1e-12;
  EXPECT_TRUE(resample_check(a, b));
}

TEST(ResampleCheck, RejectsCellSizeMismatch) {
  GridSpec a{100, 50, 0.0, 0.0, 0.5};
  GridSpec b = a;
  b.cell_size = 0.50001;
  EXPECT_FALSE(resample_check(a, b));
}

TEST(ResampleCheck, RejectsDimensionMismatch) {
  GridSpec a{100, 50, 0.0, 0.0, 0.5};
  GridSpec b = a;
  b.width = 101;
  EXPECT_FALSE(resample_check(a, b));
  b = a;
  b.height = 49;
  EXPECT_FALSE(resample_check(a, b));
}

TEST(ResampleCheck, ZeroOriginUsesAbsoluteFloor) {
  GridSpec a{4, 4, 0.0, 0.0, 1.0};
  GridSpec b = a;
  b.origin_x = 1e-12;
  EXPECT_TRUE(resample_check(a, b));
  b.origin_x = 1e-6;
  EXPECT_FALSE(resample_check(a, b));
}

TEST(LabelMask, AcceptsBinaryAndNodata) {
  RasterGrid g(GridSpec{3, 1, 0, 0, 1}, -9999.0);
  g.values = {0.0, 1.0, -9999.0};
  const LabelMask m = LabelMask::from_grid(g);
  EXPECT_FALSE(m.positive(0));
  EXPECT_TRUE(m.positive(1));
  EXPECT_FALSE(m.positive(2));
  EXPECT_TRUE(m.known(0));
  EXPECT_FALSE(m.known(2));
}

TEST(LabelMask, RejectsNonBinaryValues) {
  RasterGrid g(GridSpec{2, 1, 0, 0, 1});
  g.values = {0.0, 2.0};
  EXPECT_THROW(LabelMask::from_grid(g), ParseError);
  g.values = {0.5, 1.0};
  EXPECT_THROW(LabelMask::from_grid(g), ParseError);
}

TEST(RasterFormat, InferredFromExtension) {
  EXPECT_EQ(raster_format_for_path("a/b/c.asc"), RasterFormat::kAsciiGrid);
  EXPECT_EQ(raster_format_for_path("dsm.cevg"), RasterFormat::kBinaryGrid);
  EXPECT_THROW(raster_format_for_path("grid.tif"), ParseError);
}

TEST(RasterIo, MissingFileIsIoError) {
  EXPECT_THROW(read_raster("/nonexistent/grid.asc"), IoError);
}

TEST(RasterIo, OneByOneGrid) {
  TempDir dir;
  RasterGrid g(GridSpec{1, 1, 3.0, 4.0, 2.0});
  g.values = {0.5};
  for (const char* name : {"one.asc", "one.cevg"}) {
    const std::string path = dir.file(name);
    write_raster(g, path);
    expect_bit_identical(read_raster(path), g);
  }
}

}  // namespace
}  // namespace cueval
