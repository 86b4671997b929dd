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

#include "cueval/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cueval {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GridSpec grid_spec_from_json(const json& j, const std::string& path) {
  try {
    GridSpec spec;
    spec.width = j.at("width").get<std::size_t>();
    spec.height = j.at("height").get<std::size_t>();
    spec.origin_x = j.at("origin_x").get<double>();
    spec.origin_y = j.at("origin_y").get<double>();
    spec.cell_size = j.at("cell_size").get<double>();
    if (spec.width == 0 || spec.height == 0)
      throw ParseError(path + ": grid must be non-empty");
    if (!(spec.cell_size > 0.0))
      throw ParseError(path + ": cell_size must be positive");
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

GridSpec load_grid_spec(const std::string& path) {
  return grid_spec_from_json(load_json(path), path);
}

SceneSpec load_scene_spec(const std::string& path) {
  const json j = load_json(path);
  try {
    SceneSpec spec;
    spec.grid = grid_spec_from_json(j.at("grid"), path);
    spec.ground_elevation = j.value("ground_elevation", 0.0);
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.truth_margin_m = j.value("truth_margin_m", 3.0);
    for (const json& bj : j.value("buildings", json::array())) {
      Building b;
      const auto& fp = bj.at("footprint");
      if (!fp.is_array() || fp.size() != 4)
        throw ParseError(path + ": footprint must be [x0, y0, x1, y1]");
      b.x0 = fp[0].get<double>();
      b.y0 = fp[1].get<double>();
      b.x1 = fp[2].get<double>();
      b.y1 = fp[3].get<double>();
      const std::string roof = bj.value("roof", "flat");
      if (roof == "flat") {
        b.roof = RoofKind::kFlat;
      } else if (roof == "shed") {
        b.roof = RoofKind::kShed;
      } else if (roof == "gable") {
        b.roof = RoofKind::kGable;
      } else if (roof == "hip") {
        b.roof = RoofKind::kHip;
      } else {
        throw ParseError(path + ": unknown roof kind '" + roof + "'");
      }
      b.eave_height = bj.at("eave_height").get<double>();
      b.pitch = bj.value("pitch", 0.0);
      const std::string axis = bj.value("ridge_axis", "y");
      if (axis == "x") {
        b.ridge_axis = RidgeAxis::kAxisX;
      } else if (axis == "y") {
        b.ridge_axis = RidgeAxis::kAxisY;
      } else {
        throw ParseError(path + ": ridge_axis must be \"x\" or \"y\"");
      }
      spec.buildings.push_back(b);
    }
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void apply_run_config_file(const std::string& path, RunConfig& cfg) {
  const json j = load_json(path);
  if (!j.is_object()) throw ParseError(path + ": config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "ref_mask") {
        cfg.ref_mask_path = value.get<std::string>();
      } else if (key == "ref_dsm") {
        cfg.ref_dsm_path = value.get<std::string>();
      } else if (key == "test_mask") {
        cfg.test_mask_path = value.get<std::string>();
      } else if (key == "test_dsm") {
        cfg.test_dsm_path = value.get<std::string>();
      } else if (key == "test_mesh") {
        cfg.test_mesh_path = value.get<std::string>();
      } else if (key == "grid_spec") {
        cfg.grid_spec_path = value.get<std::string>();
      } else if (key == "out_dir") {
        cfg.out_dir = value.get<std::string>();
      } else if (key == "z_threshold") {
        cfg.eval.z_threshold = value.get<double>();
      } else if (key == "angle_threshold") {
        cfg.eval.angle_threshold = value.get<double>();
      } else if (key == "normal_radius_m") {
        cfg.eval.normal_radius_m = value.get<double>();
      } else if (key == "min_points") {
        cfg.eval.min_points = value.get<int>();
      } else if (key == "registration_radius") {
        cfg.eval.registration_radius = value.get<int>();
      } else if (key == "hist_bin_width") {
        cfg.hist_bin_width = value.get<double>();
      } else if (key == "emit_error_map") {
        cfg.emit_error_map = value.get<bool>();
      } else if (key == "emit_slope") {
        cfg.emit_slope = value.get<bool>();
      } else if (key == "emit_hist") {
        cfg.emit_hist = value.get<bool>();
      } else {
        throw ParseError(path + ": unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace cueval
