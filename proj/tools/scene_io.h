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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpas/types.h"

namespace gpas::io {

// Versioned on-disk scene: cameras, correspondences, optional ground truth.
// Loading is strict; unknown fields and malformed values are rejected.
struct Scene {
  GeneralizedCamera rig;
  std::vector<Correspondence> correspondences;
  std::optional<SimilarityTransform> ground_truth;
};

// Solver output written next to a scene.
struct SolveOutput {
  SimilarityTransform transform;
  std::vector<int> inlier_indices;
  // Reprojection error of every correspondence under `transform`.
  std::vector<double> residuals;
  std::string best_hypothesis_kind = "similarity";
  int iterations_run = 0;
  long long hypotheses_evaluated = 0;
  long long coplanar_path_hypotheses = 0;
  long long general_path_hypotheses = 0;
  double solve_time_ms = 0.0;
};

template <typename T>
struct IoResult {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
};

IoResult<Scene> load_scene(const std::string& path);
// Returns an empty string on success, otherwise the error message.
std::string save_scene(const Scene& scene, const std::string& path);

IoResult<SolveOutput> load_result(const std::string& path);
std::string save_result(const SolveOutput& output, const std::string& path);

// Writes via a temp file plus rename so readers never observe a partial
// file. Returns an empty string on success.
std::string write_text_atomic(const std::string& path,
                              const std::string& content);

}  // namespace gpas::io
