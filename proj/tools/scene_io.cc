// Copyright 2026 The gpas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scene_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gpas::io {

namespace {

using nlohmann::json;

constexpr int kSceneVersion = 1;
constexpr int kResultVersion = 1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required,
                  const std::string& context) {
  if (!obj.is_object()) {
    throw ParseError(context + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError(context + ": unknown field \"" + item.key() + "\"");
    }
  }
  for (const char* key : required) {
    if (!obj.contains(key)) {
      throw ParseError(context + ": missing field \"" + key + "\"");
    }
  }
}

double as_finite_double(const json& value, const std::string& context) {
  if (!value.is_number()) {
    throw ParseError(context + ": expected a number");
  }
  const double d = value.get<double>();
  if (!std::isfinite(d)) {
    throw ParseError(context + ": expected a finite number");
  }
  return d;
}

int as_int(const json& value, const std::string& context) {
  if (!value.is_number_integer()) {
    throw ParseError(context + ": expected an integer");
  }
  return value.get<int>();
}

Vec3 as_vec3(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 3) {
    throw ParseError(context + ": expected an array of 3 numbers");
  }
  return Vec3(as_finite_double(value[0], context),
              as_finite_double(value[1], context),
              as_finite_double(value[2], context));
}

Vec2 as_vec2(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 2) {
    throw ParseError(context + ": expected an array of 2 numbers");
  }
  return Vec2(as_finite_double(value[0], context),
              as_finite_double(value[1], context));
}

Mat3 as_rotation(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 9) {
    throw ParseError(context + ": expected an array of 9 numbers");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      m(r, c) = as_finite_double(value[3 * r + c], context);
    }
  }
  if (!is_rotation_matrix(m, 1e-6)) {
    throw ParseError(context + ": not a rotation matrix");
  }
  return m;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json vec2_to_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

json rotation_to_json(const Mat3& m) {
  json a = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      a.push_back(m(r, c));
    }
  }
  return a;
}

SimilarityTransform transform_from_json(const json& obj,
                                        const std::string& context) {
  require_keys(obj, {"scale", "rotation", "translation"},
               {"scale", "rotation", "translation"}, context);
  SimilarityTransform t;
  t.scale = as_finite_double(obj["scale"], context + ".scale");
  if (t.scale <= 0.0) {
    throw ParseError(context + ".scale: must be positive");
  }
  t.rotation = as_rotation(obj["rotation"], context + ".rotation");
  t.translation = as_vec3(obj["translation"], context + ".translation");
  return t;
}

json transform_to_json(const SimilarityTransform& t) {
  json obj;
  obj["scale"] = t.scale;
  obj["rotation"] = rotation_to_json(t.rotation);
  obj["translation"] = vec3_to_json(t.translation);
  return obj;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string write_text_atomic(const std::string& path,
                              const std::string& content) {
  const std::string tmp_path = path + ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      return "cannot open " + tmp_path + " for writing";
    }
    out << content;
    if (!out) {
      return "write failed for " + tmp_path;
    }
  }
  if (std::rename(tmp_path.c_str(), path.c_str()) != 0) {
    std::remove(tmp_path.c_str());
    return "cannot rename " + tmp_path + " to " + path;
  }
  return "";
}

IoResult<Scene> load_scene(const std::string& path) {
  IoResult<Scene> result;
  try {
    const json root = json::parse(read_file(path));
    require_keys(root, {"version", "cameras", "correspondences", "ground_truth"},
                 {"version", "cameras", "correspondences"}, "scene");
    if (as_int(root["version"], "scene.version") != kSceneVersion) {
      throw ParseError("scene.version: unsupported version");
    }
    if (!root["cameras"].is_array() || root["cameras"].empty()) {
      throw ParseError("scene.cameras: expected a non-empty array");
    }
    if (!root["correspondences"].is_array()) {
      throw ParseError("scene.correspondences: expected an array");
    }

    Scene scene;
    int index = 0;
    for (const json& cam : root["cameras"]) {
      const std::string context = "scene.cameras[" + std::to_string(index) + "]";
      require_keys(cam,
                   {"center", "orientation", "focal_length", "image_width",
                    "image_height", "principal_point"},
                   {"center", "orientation", "focal_length", "image_width",
                    "image_height", "principal_point"},
                   context);
      PinholeCamera camera;
      camera.center = as_vec3(cam["center"], context + ".center");
      camera.orientation =
          as_rotation(cam["orientation"], context + ".orientation");
      camera.focal_length =
          as_finite_double(cam["focal_length"], context + ".focal_length");
      if (camera.focal_length <= 0.0) {
        throw ParseError(context + ".focal_length: must be positive");
      }
      camera.image_width = as_int(cam["image_width"], context + ".image_width");
      camera.image_height =
          as_int(cam["image_height"], context + ".image_height");
      if (camera.image_width <= 0 || camera.image_height <= 0) {
        throw ParseError(context + ": image dimensions must be positive");
      }
      camera.principal_point =
          as_vec2(cam["principal_point"], context + ".principal_point");
      scene.rig.cameras.push_back(camera);
      ++index;
    }

    index = 0;
    for (const json& corr : root["correspondences"]) {
      const std::string context =
          "scene.correspondences[" + std::to_string(index) + "]";
      require_keys(corr, {"world_point", "camera_index", "pixel"},
                   {"world_point", "camera_index", "pixel"}, context);
      const int camera_index =
          as_int(corr["camera_index"], context + ".camera_index");
      if (camera_index < 0 ||
          camera_index >= static_cast<int>(scene.rig.cameras.size())) {
        throw ParseError(context + ".camera_index: out of range");
      }
      scene.correspondences.push_back(make_correspondence(
          scene.rig, camera_index,
          as_vec3(corr["world_point"], context + ".world_point"),
          as_vec2(corr["pixel"], context + ".pixel")));
      ++index;
    }

    if (root.contains("ground_truth")) {
      scene.ground_truth =
          transform_from_json(root["ground_truth"], "scene.ground_truth");
    }
    result.value = std::move(scene);
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

std::string save_scene(const Scene& scene, const std::string& path) {
  json root;
  root["version"] = kSceneVersion;
  root["cameras"] = json::array();
  for (const PinholeCamera& camera : scene.rig.cameras) {
    json cam;
    cam["center"] = vec3_to_json(camera.center);
    cam["orientation"] = rotation_to_json(camera.orientation);
    cam["focal_length"] = camera.focal_length;
    cam["image_width"] = camera.image_width;
    cam["image_height"] = camera.image_height;
    cam["principal_point"] = vec2_to_json(camera.principal_point);
    root["cameras"].push_back(cam);
  }
  root["correspondences"] = json::array();
  for (const Correspondence& corr : scene.correspondences) {
    json c;
    c["world_point"] = vec3_to_json(corr.world_point);
    c["camera_index"] = corr.camera_index;
    c["pixel"] = vec2_to_json(corr.pixel);
    root["correspondences"].push_back(c);
  }
  if (scene.ground_truth) {
    root["ground_truth"] = transform_to_json(*scene.ground_truth);
  }
  return write_text_atomic(path, root.dump(2) + "\n");
}

IoResult<SolveOutput> load_result(const std::string& path) {
  IoResult<SolveOutput> result;
  try {
    const json root = json::parse(read_file(path));
    require_keys(root,
                 {"version", "transform", "inlier_indices", "residuals",
                  "diagnostics"},
                 {"version", "transform", "inlier_indices", "residuals",
                  "diagnostics"},
                 "result");
    if (as_int(root["version"], "result.version") != kResultVersion) {
      throw ParseError("result.version: unsupported version");
    }
    SolveOutput output;
    output.transform =
        transform_from_json(root["transform"], "result.transform");
    if (!root["inlier_indices"].is_array()) {
      throw ParseError("result.inlier_indices: expected an array");
    }
    for (const json& v : root["inlier_indices"]) {
      output.inlier_indices.push_back(as_int(v, "result.inlier_indices[]"));
    }
    if (!root["residuals"].is_array()) {
      throw ParseError("result.residuals: expected an array");
    }
    for (const json& v : root["residuals"]) {
      if (v.is_string() && v.get<std::string>() == "inf") {
        output.residuals.push_back(
            std::numeric_limits<double>::infinity());
      } else {
        output.residuals.push_back(as_finite_double(v, "result.residuals[]"));
      }
    }
    const json& diag = root["diagnostics"];
    require_keys(diag,
                 {"best_hypothesis_kind", "iterations_run",
                  "hypotheses_evaluated", "coplanar_path_hypotheses",
                  "general_path_hypotheses", "solve_time_ms"},
                 {"best_hypothesis_kind", "iterations_run",
                  "hypotheses_evaluated", "coplanar_path_hypotheses",
                  "general_path_hypotheses", "solve_time_ms"},
                 "result.diagnostics");
    output.best_hypothesis_kind =
        diag["best_hypothesis_kind"].get<std::string>();
    if (output.best_hypothesis_kind != "similarity" &&
        output.best_hypothesis_kind != "affine") {
      throw ParseError("result.diagnostics.best_hypothesis_kind: invalid");
    }
    output.iterations_run =
        as_int(diag["iterations_run"], "result.diagnostics.iterations_run");
    output.hypotheses_evaluated =
        diag["hypotheses_evaluated"].get<long long>();
    output.coplanar_path_hypotheses =
        diag["coplanar_path_hypotheses"].get<long long>();
    output.general_path_hypotheses =
        diag["general_path_hypotheses"].get<long long>();
    output.solve_time_ms = as_finite_double(
        diag["solve_time_ms"], "result.diagnostics.solve_time_ms");
    result.value = std::move(output);
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

std::string save_result(const SolveOutput& output, const std::string& path) {
  json root;
  root["version"] = kResultVersion;
  root["transform"] = transform_to_json(output.transform);
  root["inlier_indices"] = output.inlier_indices;
  json residuals = json::array();
  for (const double r : output.residuals) {
    if (std::isfinite(r)) {
      residuals.push_back(r);
    } else {
      residuals.push_back("inf");
    }
  }
  root["residuals"] = residuals;
  json diag;
  diag["best_hypothesis_kind"] = output.best_hypothesis_kind;
  diag["iterations_run"] = output.iterations_run;
  diag["hypotheses_evaluated"] = output.hypotheses_evaluated;
  diag["coplanar_path_hypotheses"] = output.coplanar_path_hypotheses;
  diag["general_path_hypotheses"] = output.general_path_hypotheses;
  diag["solve_time_ms"] = output.solve_time_ms;
  root["diagnostics"] = diag;
  return write_text_atomic(path, root.dump(2) + "\n");
}

}  // namespace gpas::io
