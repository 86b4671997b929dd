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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace cueval {

namespace {

double rel_tol(double a, double b) {
  return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(double a, double b) { return std::abs(a - b) <= rel_tol(a, b); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

// --- text grid format ------------------------------------------------------

struct Token {
  std::string_view text;
  std::size_t line = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      tokens.push_back({text.substr(start, i - start), line});
    }
  }
  return tokens;
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return r;
}

RasterGrid read_ascii(const std::string& path) {
  const std::string text = read_file(path);
  const std::vector<Token> tokens = tokenize(text);

  auto fail = [&](const Token& t, const std::string& msg) -> void {
    throw ParseError(path + ":" + std::to_string(t.line) + ": " + msg);
  };

  // Header: alphabetic key/value pairs until the first numeric token.
  double ncols = -1, nrows = -1, xll = 0, yll = 0, cell = -1,
         nodata = kDefaultNodata;
  bool have[5] = {false, false, false, false, false};
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& t = tokens[i];
    const char c = t.text.front();
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') break;
    if (i + 1 >= tokens.size()) fail(t, "header key without a value");
    const std::string key = lower(t.text);
    double value;
    if (!parse_double(tokens[i + 1].text, value))
      fail(tokens[i + 1], "bad value for header key '" + key + "'");
    if (key == "ncols") {
      if (have[0]) fail(t, "duplicate header key 'ncols'");
      ncols = value;
      have[0] = true;
    } else if (key == "nrows") {
      if (have[1]) fail(t, "duplicate header key 'nrows'");
      nrows = value;
      have[1] = true;
    } else if (key == "xllcorner") {
      if (have[2]) fail(t, "duplicate header key 'xllcorner'");
      xll = value;
      have[2] = true;
    } else if (key == "yllcorner") {
      if (have[3]) fail(t, "duplicate header key 'yllcorner'");
      yll = value;
      have[3] = true;
    } else if (key == "cellsize") {
      if (have[4]) fail(t, "duplicate header key 'cellsize'");
      cell = value;
      have[4] = true;
    } else if (key == "nodata_value") {
      nodata = value;
    } else if (key == "dx" || key == "dy") {
      fail(t, "non-square cells (header key '" + key + "') are unsupported");
    } else {
      fail(t, "unknown header key '" + key + "'");
    }
    i += 2;
  }
  static const char* kNames[5] = {"ncols", "nrows", "xllcorner", "yllcorner",
                                  "cellsize"};
  for (int k = 0; k < 5; ++k) {
    if (!have[k])
      throw ParseError(path + ": missing header key '" + std::string(kNames[k]) +
                       "'");
  }
  if (ncols < 1 || nrows < 1 || ncols != std::floor(ncols) ||
      nrows != std::floor(nrows)) {
    throw ParseError(path + ": ncols/nrows must be positive integers");
  }
  if (!(cell > 0)) throw ParseError(path + ": cellsize must be positive");

  GridSpec spec;
  spec.width = static_cast<std::size_t>(ncols);
  spec.height = static_cast<std::size_t>(nrows);
  spec.cell_size = cell;
  spec.origin_x = xll;
  spec.origin_y = yll + static_cast<double>(spec.height) * cell;

  RasterGrid grid(spec, nodata);
  const std::size_t expected = spec.size();
  std::size_t count = 0;
  for (; i < tokens.size(); ++i) {
    double v;
    if (!parse_double(tokens[i].text, v))
      fail(tokens[i], "bad sample token '" + std::string(tokens[i].text) + "'");
    if (count >= expected) {
      fail(tokens[i], "sample count mismatch: header declares " +
                          std::to_string(expected) + " samples, file has more");
    }
    grid.values[count++] = v;
  }
  if (count != expected) {
    throw ParseError(path + ": sample count mismatch: header declares " +
                     std::to_string(expected) + " samples, file has " +
                     std::to_string(count));
  }
  return grid;
}

void append_double_17g(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string format_ascii(const RasterGrid& grid) {
  std::string out;
  out.reserve(grid.spec.size() * 12 + 200);
  auto header = [&](const char* key, double v) {
    out += key;
    out += ' ';
    append_double_17g(out, v);
    out += '\n';
  };
  const GridSpec& s = grid.spec;
  header("ncols", static_cast<double>(s.width));
  header("nrows", static_cast<double>(s.height));
  header("xllcorner", s.origin_x);
  header("yllcorner",
         s.origin_y - static_cast<double>(s.height) * s.cell_size);
  header("cellsize", s.cell_size);
  header("NODATA_value", grid.nodata);
  for (std::size_t row = 0; row < s.height; ++row) {
    for (std::size_t col = 0; col < s.width; ++col) {
      if (col) out += ' ';
      append_double_17g(out, grid.at(col, row));
    }
    out += '\n';
  }
  return out;
}

// --- binary grid format -----------------------------------------------------
//
// Layout (all little-endian):
//   bytes 0..3   magic "CEVG"
//   u32          format version (1)
//   u64          width, u64 height
//   f64          origin_x, origin_y, cell_size, nodata
//   f64 * w*h    samples, row-major
constexpr char kMagic[4] = {'C', 'E', 'V', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;
constexpr std::size_t kBinaryHeaderSize = 4 + 4 + 8 + 8 + 4 * 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}
void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint32_t get_u32(const std::string& b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + i]))
         << (8 * i);
  return v;
}
std::uint64_t get_u64(const std::string& b, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[off + i]))
         << (8 * i);
  return v;
}
double get_f64(const std::string& b, std::size_t off) {
  return std::bit_cast<double>(get_u64(b, off));
}

RasterGrid read_binary(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < kBinaryHeaderSize)
    throw ParseError(path + ": truncated header (" +
                     std::to_string(bytes.size()) + " bytes)");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ParseError(path + ": bad magic at offset 0");
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kBinaryVersion)
    throw ParseError(path + ": unsupported format version " +
                     std::to_string(version));
  GridSpec spec;
  const std::uint64_t w = get_u64(bytes, 8);
  const std::uint64_t h = get_u64(bytes, 16);
  spec.origin_x = get_f64(bytes, 24);
  spec.origin_y = get_f64(bytes, 32);
  spec.cell_size = get_f64(bytes, 40);
  const double nodata = get_f64(bytes, 48);
  if (w == 0 || h == 0)
    throw ParseError(path + ": zero-sized grid in header");
  if (!(spec.cell_size > 0))
    throw ParseError(path + ": cell size must be positive");
  if (w > (std::numeric_limits<std::size_t>::max() - kBinaryHeaderSize) / 8 / h)
    throw ParseError(path + ": grid dimensions overflow");
  spec.width = static_cast<std::size_t>(w);
  spec.height = static_cast<std::size_t>(h);
  const std::size_t expected_bytes = kBinaryHeaderSize + spec.size() * 8;
  if (bytes.size() != expected_bytes) {
    throw ParseError(path + ": sample count mismatch: header declares " +
                     std::to_string(spec.size()) + " samples (" +
                     std::to_string(expected_bytes) + " bytes), file has " +
                     std::to_string(bytes.size()) + " bytes");
  }
  RasterGrid grid(spec, nodata);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    grid.values[i] = get_f64(bytes, kBinaryHeaderSize + i * 8);
  }
  return grid;
}

std::string format_binary(const RasterGrid& grid) {
  std::string out;
  out.reserve(kBinaryHeaderSize + grid.spec.size() * 8);
  out.append(kMagic, 4);
  put_u32(out, kBinaryVersion);
  put_u64(out, grid.spec.width);
  put_u64(out, grid.spec.height);
  put_f64(out, grid.spec.origin_x);
  put_f64(out, grid.spec.origin_y);
  put_f64(out, grid.spec.cell_size);
  put_f64(out, grid.nodata);
  for (double v : grid.values) put_f64(out, v);
  return out;
}

}  // namespace

bool resample_check(const GridSpec& a, const GridSpec& b) {
  return a.width == b.width && a.height == b.height &&
         close(a.origin_x, b.origin_x) && close(a.origin_y, b.origin_y) &&
         close(a.cell_size, b.cell_size);
}

std::size_t RasterGrid::valid_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) n += valid(i) ? 1 : 0;
  return n;
}

RasterFormat raster_format_for_path(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::size_t n = std::strlen(suffix);
    return path.size() >= n &&
           path.compare(path.size() - n, n, suffix) == 0;
  };
  if (ends_with(".asc")) return RasterFormat::kAsciiGrid;
  if (ends_with(".cevg")) return RasterFormat::kBinaryGrid;
  throw ParseError("cannot infer raster format from '" + path +
                   "' (expected .asc or .cevg)");
}

RasterGrid read_raster(const std::string& path, RasterFormat format) {
  return format == RasterFormat::kAsciiGrid ? read_ascii(path)
                                            : read_binary(path);
}

void write_raster(const RasterGrid& grid, const std::string& path,
                  RasterFormat format) {
  if (grid.spec.size() == 0)
    throw ParseError("refusing to write zero-sized raster to '" + path + "'");
  if (grid.values.size() != grid.spec.size())
    throw ParseError("raster sample buffer does not match its header");
  write_file(path, format == RasterFormat::kAsciiGrid ? format_ascii(grid)
                                                      : format_binary(grid));
}

RasterGrid read_raster(const std::string& path) {
  return read_raster(path, raster_format_for_path(path));
}

void write_raster(const RasterGrid& grid, const std::string& path) {
  write_raster(grid, path, raster_format_for_path(path));
}

LabelMask LabelMask::from_grid(RasterGrid g) {
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.valid(i) && g.values[i] != 0.0 && g.values[i] != 1.0) {
      throw ParseError("label mask sample " + std::to_string(i) + " is " +
                       std::to_string(g.values[i]) + "; expected 0, 1 or nodata");
    }
  }
  return LabelMask{std::move(g)};
}

LabelMask read_mask(const std::string& path) {
  return LabelMask::from_grid(read_raster(path));
}

}  // namespace cueval
