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

#include <cstdint>
#include <string>

#include "gpas/robust_estimator.h"
#include "gpas/synthetic.h"

namespace gpas::cli {

// Process exit codes shared by every subcommand.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitEstimationFailure = 2;

struct SolveArgs {
  std::string scene_path;
  std::string output_path;
  RansacConfig config;
};

struct GenerateArgs {
  std::string output_path;
  SceneRecipe recipe;
};

struct BenchArgs {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int trials = 100;
  int runs_per_level = 20;
  SolverVariant variant;
  RansacConfig config;
};

int cmd_solve(const SolveArgs& args);
int cmd_generate(const GenerateArgs& args);
int cmd_bench_stability(const BenchArgs& args);
int cmd_bench_noise(const BenchArgs& args);
int cmd_bench_ransac(const BenchArgs& args);
int cmd_bench_coplanar(const BenchArgs& args);
int cmd_bench_timing(const BenchArgs& args);

}  // namespace gpas::cli
