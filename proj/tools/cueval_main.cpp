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

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cueval/config.hpp"
#include "cueval/mesh.hpp"
#include "cueval/normals.hpp"
#include "cueval/pipeline.hpp"
#include "cueval/report.hpp"
#include "cueval/synth.hpp"
#include "cueval/version.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 2 input/parse error, 3 grid alignment error,
// 4 internal error.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kAlignmentError = 3;
constexpr int kInternalError = 4;

struct EvalArgs {
  std::string config;
  std::string ref_mask, ref_dsm, test_mask, test_dsm, test_mesh, grid_spec;
  std::string out_dir;
  double z_threshold = 1.0;
  double angle_threshold = 5.0;
  double normal_radius = 3.0;
  int min_points = 6;
  int reg_radius = 10;
  double hist_bin_width = 1.0;
  bool emit_error_map = false;
  bool emit_slope = false;
  bool emit_hist = false;
};

int run_eval(const CLI::App& cmd, const EvalArgs& args) {
  cueval::RunConfig cfg;
  if (!args.config.empty()) cueval::apply_run_config_file(args.config, cfg);

  // Command-line flags override the config file.
  auto given = [&](const std::string& name) { return cmd.count(name) > 0; };
  if (given("--ref-mask")) cfg.ref_mask_path = args.ref_mask;
  if (given("--ref-dsm")) cfg.ref_dsm_path = args.ref_dsm;
  if (given("--test-mask")) cfg.test_mask_path = args.test_mask;
  if (given("--test-dsm")) cfg.test_dsm_path = args.test_dsm;
  if (given("--test-mesh")) cfg.test_mesh_path = args.test_mesh;
  if (given("--grid-spec")) cfg.grid_spec_path = args.grid_spec;
  if (given("--out-dir")) cfg.out_dir = args.out_dir;
  if (given("--z-threshold")) cfg.eval.z_threshold = args.z_threshold;
  if (given("--angle-threshold"))
    cfg.eval.angle_threshold = args.angle_threshold;
  if (given("--normal-radius")) cfg.eval.normal_radius_m = args.normal_radius;
  if (given("--min-points")) cfg.eval.min_points = args.min_points;
  if (given("--reg-radius")) cfg.eval.registration_radius = args.reg_radius;
  if (given("--hist-bin-width")) cfg.hist_bin_width = args.hist_bin_width;
  if (given("--emit-error-map")) cfg.emit_error_map = args.emit_error_map;
  if (given("--emit-slope")) cfg.emit_slope = args.emit_slope;
  if (given("--emit-hist")) cfg.emit_hist = args.emit_hist;

  const cueval::MetricsReport report = cueval::evaluate(cfg);
  std::cout << cueval::serialize_report(report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cumulative evaluation of urban 3D surface models"};
  app.set_version_flag("--version", cueval::kVersion);
  app.require_subcommand(1);

  // eval
  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a test surface model against a reference");
  eval->add_option("--config", eval_args.config,
                   "JSON run config; explicit flags override it");
  eval->add_option("--ref-mask", eval_args.ref_mask,
                   "Reference footprint mask raster");
  eval->add_option("--ref-dsm", eval_args.ref_dsm,
                   "Reference surface raster");
  eval->add_option("--test-mask", eval_args.test_mask,
                   "Test footprint mask raster");
  eval->add_option("--test-dsm", eval_args.test_dsm,
                   "Test surface raster (alternative to --test-mesh)");
  eval->add_option("--test-mesh", eval_args.test_mesh,
                   "Test surface mesh (OBJ; alternative to --test-dsm)");
  eval->add_option("--grid-spec", eval_args.grid_spec,
                   "JSON grid spec used to rasterize --test-mesh "
                   "(default: the reference grid)");
  eval->add_option("--out-dir", eval_args.out_dir,
                   "Directory for report.json and optional rasters");
  eval->add_option("--z-threshold", eval_args.z_threshold,
                   "Elevation agreement threshold in meters")
      ->capture_default_str();
  eval->add_option("--angle-threshold", eval_args.angle_threshold,
                   "Normal angle agreement threshold in degrees")
      ->capture_default_str();
  eval->add_option("--normal-radius", eval_args.normal_radius,
                   "Normal estimation window radius in meters")
      ->capture_default_str();
  eval->add_option("--min-points", eval_args.min_points,
                   "Minimum window points for a valid normal")
      ->capture_default_str();
  eval->add_option("--reg-radius", eval_args.reg_radius,
                   "Registration search radius in pixels")
      ->capture_default_str();
  eval->add_option("--hist-bin-width", eval_args.hist_bin_width,
                   "Slope histogram bin width in degrees")
      ->capture_default_str();
  eval->add_flag("--emit-error-map", eval_args.emit_error_map,
                 "Write the per-pixel class raster");
  eval->add_flag("--emit-slope", eval_args.emit_slope,
                 "Write slope rasters for both models");
  eval->add_flag("--emit-hist", eval_args.emit_hist,
                 "Write the reference slope histogram");

  // rasterize
  std::string r_mesh, r_grid, r_out;
  double r_nodata = cueval::kDefaultNodata;
  CLI::App* rasterize = app.add_subcommand(
      "rasterize", "Rasterize the top surface of a mesh onto a grid");
  rasterize->add_option("--mesh", r_mesh, "Input OBJ mesh")->required();
  rasterize->add_option("--grid-spec", r_grid, "JSON grid spec")->required();
  rasterize->add_option("--out", r_out, "Output raster (.asc or .cevg)")
      ->required();
  rasterize->add_option("--nodata", r_nodata, "Nodata value for uncovered pixels")
      ->capture_default_str();

  // normals
  std::string n_dsm, n_slope, n_valid;
  double n_radius = 3.0;
  int n_min_points = 6;
  bool n_gate = false;
  CLI::App* normals = app.add_subcommand(
      "normals", "Estimate per-pixel surface normals of a raster");
  normals->add_option("--dsm", n_dsm, "Input surface raster")->required();
  normals->add_option("--radius", n_radius, "Window radius in meters")
      ->capture_default_str();
  normals->add_option("--min-points", n_min_points,
                      "Minimum window points for a valid normal")
      ->capture_default_str();
  normals->add_flag("--gate", n_gate, "Apply the planarity gate");
  normals->add_option("--out-slope", n_slope,
                      "Output slope raster in degrees")
      ->required();
  normals->add_option("--out-valid", n_valid, "Output 0/1 validity raster");

  // synth
  std::string s_scene, s_out_dir;
  bool s_truth = false;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic scene from a JSON description");
  synth->add_option("--scene", s_scene, "JSON scene description")->required();
  synth->add_option("--out-dir", s_out_dir, "Output directory")->required();
  synth->add_flag("--emit-truth", s_truth,
                  "Also write analytic truth slope and validity rasters");

  // hist
  std::string h_dsm, h_out;
  double h_radius = 3.0, h_bin = 1.0;
  int h_min_points = 6;
  bool h_no_gate = false;
  CLI::App* hist = app.add_subcommand(
      "hist", "Slope histogram of a surface raster's normals");
  hist->add_option("--dsm", h_dsm, "Input surface raster")->required();
  hist->add_option("--radius", h_radius, "Window radius in meters")
      ->capture_default_str();
  hist->add_option("--min-points", h_min_points,
                   "Minimum window points for a valid normal")
      ->capture_default_str();
  hist->add_option("--bin-width", h_bin, "Bin width in degrees")
      ->capture_default_str();
  hist->add_flag("--no-gate", h_no_gate, "Skip the planarity gate");
  hist->add_option("--out", h_out, "Output histogram JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (eval->parsed()) return run_eval(*eval, eval_args);

    if (rasterize->parsed()) {
      const cueval::TriangleMesh mesh = cueval::read_obj(r_mesh);
      const cueval::GridSpec spec = cueval::load_grid_spec(r_grid);
      cueval::write_raster(cueval::rasterize_mesh(mesh, spec, r_nodata), r_out);
      return kOk;
    }

    if (normals->parsed()) {
      const cueval::RasterGrid dsm = cueval::read_raster(n_dsm);
      cueval::NormalField field =
          cueval::compute_normals(dsm, n_radius, n_min_points);
      if (n_gate) field = cueval::planarity_gate(field);
      cueval::write_raster(cueval::slope_raster(field), n_slope);
      if (!n_valid.empty())
        cueval::write_raster(cueval::validity_raster(field), n_valid);
      return kOk;
    }

    if (synth->parsed()) {
      const cueval::SceneSpec spec = cueval::load_scene_spec(s_scene);
      const cueval::Scene scene = cueval::generate(spec);
      std::error_code ec;
      fs::create_directories(s_out_dir, ec);
      if (ec)
        throw cueval::IoError("cannot create output directory '" + s_out_dir +
                              "': " + ec.message());
      const fs::path out(s_out_dir);
      cueval::write_raster(scene.mask.grid, (out / "mask.asc").string());
      cueval::write_raster(scene.dsm, (out / "dsm.cevg").string());
      cueval::write_obj(scene.mesh, (out / "mesh.obj").string());
      if (s_truth) {
        cueval::write_raster(cueval::slope_raster(scene.truth_normals),
                             (out / "truth_slope.asc").string());
        cueval::write_raster(cueval::validity_raster(scene.truth_normals),
                             (out / "truth_valid.asc").string());
      }
      return kOk;
    }

    if (hist->parsed()) {
      const cueval::RasterGrid dsm = cueval::read_raster(h_dsm);
      cueval::NormalField field =
          cueval::compute_normals(dsm, h_radius, h_min_points);
      if (!h_no_gate) field = cueval::planarity_gate(field);
      cueval::write_text_atomic(
          h_out, cueval::serialize_histogram(
                     cueval::slope_histogram(field, h_bin)));
      return kOk;
    }
  } catch (const cueval::AlignmentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAlignmentError;
  } catch (const cueval::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const cueval::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;  // unreachable: a subcommand is required
}
