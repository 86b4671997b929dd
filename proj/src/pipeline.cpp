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

#include "cueval/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <utility>

#include "cueval/config.hpp"
#include "cueval/mesh.hpp"
#include "cueval/normals.hpp"
#include "cueval/registration.hpp"

namespace fs = std::filesystem;

namespace cueval {

namespace {

// Re-throws stage failures with the stage name prefixed, keeping the error
// type (and therefore the CLI exit code) intact.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IoError& e) {
    throw IoError(std::string(name) + ": " + e.what());
  } catch (const AlignmentError& e) {
    throw AlignmentError(std::string(name) + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(std::string(name) + ": " + e.what());
  }
}

void write_raster_atomic(const RasterGrid& grid, const fs::path& path) {
  // The format comes from the final name; the temp name ends in ".tmp".
  const RasterFormat format = raster_format_for_path(path.string());
  const fs::path tmp = path.string() + ".tmp";
  write_raster(grid, tmp.string(), format);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                  "': " + ec.message());
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failure on '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move '" + tmp + "' to '" + path + "': " +
                  ec.message());
}

MetricsReport evaluate(const RunConfig& cfg) {
  if (cfg.ref_mask_path.empty() || cfg.ref_dsm_path.empty() ||
      cfg.test_mask_path.empty())
    throw ParseError("evaluate: reference mask, reference surface and test "
                     "mask paths are all required");
  const bool have_dsm = !cfg.test_dsm_path.empty();
  const bool have_mesh = !cfg.test_mesh_path.empty();
  if (have_dsm == have_mesh)
    throw ParseError(
        "evaluate: exactly one of a test surface raster or a test mesh is "
        "required");
  if (!cfg.grid_spec_path.empty() && !have_mesh)
    throw ParseError("evaluate: a grid spec only applies to a test mesh");

  // Load.
  const LabelMask ref_mask = stage("reading reference mask", [&] {
    return read_mask(cfg.ref_mask_path);
  });
  const RasterGrid ref_dsm = stage("reading reference surface", [&] {
    return read_raster(cfg.ref_dsm_path);
  });
  const LabelMask test_mask_raw = stage("reading test mask", [&] {
    return read_mask(cfg.test_mask_path);
  });
  RasterGrid test_dsm_raw;
  if (have_dsm) {
    test_dsm_raw = stage("reading test surface", [&] {
      return read_raster(cfg.test_dsm_path);
    });
  } else {
    test_dsm_raw = stage("rasterizing test mesh", [&] {
      const TriangleMesh mesh = read_obj(cfg.test_mesh_path);
      const GridSpec spec = cfg.grid_spec_path.empty()
                                ? ref_dsm.spec
                                : load_grid_spec(cfg.grid_spec_path);
      return rasterize_mesh(mesh, spec, ref_dsm.nodata);
    });
  }

  // Alignment: everything must live on the reference lattice.
  stage("checking grid alignment", [&] {
    const GridSpec& spec = ref_mask.spec();
    if (!resample_check(ref_dsm.spec, spec))
      throw AlignmentError("reference surface grid differs from the "
                           "reference mask grid");
    if (!resample_check(test_mask_raw.spec(), spec))
      throw AlignmentError("test mask grid differs from the reference grid");
    if (!resample_check(test_dsm_raw.spec, spec))
      throw AlignmentError("test surface grid differs from the reference grid");
  });

  // Register and shift the test model onto the reference.
  const Offset offset = stage("registering", [&] {
    return register_translation(test_mask_raw, test_dsm_raw, ref_mask, ref_dsm,
                                cfg.eval.registration_radius);
  });
  auto [test_mask, test_dsm] = stage("applying offset", [&] {
    return apply_offset(test_mask_raw, test_dsm_raw, offset);
  });

  // Normals; only the reference side is gated for planarity.
  const NormalField ref_normals = stage("estimating reference normals", [&] {
    return planarity_gate(compute_normals(ref_dsm, cfg.eval.normal_radius_m,
                                          cfg.eval.min_points));
  });
  const NormalField test_normals = stage("estimating test normals", [&] {
    return compute_normals(test_dsm, cfg.eval.normal_radius_m,
                           cfg.eval.min_points);
  });

  // Classify and reduce.
  const ErrorMap map = stage("classifying", [&] {
    return classify(test_mask, ref_mask, test_dsm, ref_dsm, ref_normals,
                    test_normals, cfg.eval);
  });
  const CumulativeIou iou = cumulative_iou(map);
  const ClassCounts cls = tally(map);
  const RmsStats rms =
      rms_stats(map, test_dsm, ref_dsm, ref_normals, test_normals);
  const UnevaluableCounts unev =
      count_unevaluable(test_mask, ref_mask, test_dsm, ref_dsm, ref_normals);

  MetricsReport report;
  report.config = cfg.eval;
  report.offset = offset;
  report.counts.tp_c = cls.tp();
  report.counts.fp_c = cls.fp;
  report.counts.fn_c = cls.fn;
  report.counts.tp_z_pass = cls.tp_pass + cls.tp_fail_slope;
  report.counts.tp_theta_pass = cls.tp_pass;
  report.counts.z_unevaluable = unev.z_unevaluable;
  report.counts.theta_unevaluable = unev.theta_unevaluable;
  report.iou_c = iou.iou_c;
  report.iou_z = iou.iou_z;
  report.iou_m = iou.iou_m;
  report.rms = rms;

  if (!cfg.out_dir.empty()) {
    stage("writing outputs", [&] {
      std::error_code ec;
      fs::create_directories(cfg.out_dir, ec);
      if (ec)
        throw IoError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
      std::vector<InputDigest> inputs;
      inputs.push_back(
          {"ref_mask", cfg.ref_mask_path, fnv1a64_file(cfg.ref_mask_path)});
      inputs.push_back(
          {"ref_dsm", cfg.ref_dsm_path, fnv1a64_file(cfg.ref_dsm_path)});
      inputs.push_back(
          {"test_mask", cfg.test_mask_path, fnv1a64_file(cfg.test_mask_path)});
      if (have_dsm) {
        inputs.push_back(
            {"test_dsm", cfg.test_dsm_path, fnv1a64_file(cfg.test_dsm_path)});
      } else {
        inputs.push_back({"test_mesh", cfg.test_mesh_path,
                          fnv1a64_file(cfg.test_mesh_path)});
      }
      const fs::path out(cfg.out_dir);
      write_text_atomic((out / "report.json").string(),
                        serialize_report(report, inputs));
      if (cfg.emit_error_map) {
        write_raster_atomic(class_raster(map), out / "error_map.asc");
      }
      if (cfg.emit_slope) {
        write_raster_atomic(slope_raster(ref_normals), out / "slope_ref.asc");
        write_raster_atomic(slope_raster(test_normals),
                            out / "slope_test.asc");
      }
      if (cfg.emit_hist) {
        write_text_atomic(
            (out / "slope_histogram.json").string(),
            serialize_histogram(
                slope_histogram(ref_normals, cfg.hist_bin_width)));
      }
    });
  }
  return report;
}

}  // namespace cueval
