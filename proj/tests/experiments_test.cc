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

#include "gpas/experiments.h"

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace gpas {
namespace {

int count_lines(const std::string& text) {
  int lines = 0;
  for (char ch : text) {
    if (ch == '\n') {
      ++lines;
    }
  }
  return lines;
}

TEST(RunStability, SolvesNoiseFreeScenes) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  const StabilityResult result = run_stability(20, recipe, 5);
  ASSERT_EQ(result.rows.size(), 20u);
  int solved = 0;
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(result.rows[i].trial, i);
    if (result.rows[i].solved) {
      ++solved;
      EXPECT_LT(result.rows[i].depth_rmse, 1e-2);
    }
  }
  EXPECT_GE(solved, 18);
}

TEST(RunStability, DeterministicForFixedSeed) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  const StabilityResult first = run_stability(10, recipe, 9);
  const StabilityResult second = run_stability(10, recipe, 9);
  ASSERT_EQ(first.rows.size(), second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    EXPECT_EQ(first.rows[i].solved, second.rows[i].solved);
    EXPECT_EQ(first.rows[i].depth_rmse, second.rows[i].depth_rmse);
    EXPECT_EQ(first.rows[i].rotation_error_deg,
              second.rows[i].rotation_error_deg);
    EXPECT_EQ(first.rows[i].translation_error,
              second.rows[i].translation_error);
    EXPECT_EQ(first.rows[i].scale_error_rel, second.rows[i].scale_error_rel);
  }
}

TEST(RunNoiseSweep, CoversEveryLevelAndRun) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  recipe.outlier_fraction = 0.2;
  RansacConfig config;
  config.iterations = 60;
  const std::vector<double> levels = {0.0, 1.0};
  const NoiseSweepResult result = run_noise_sweep(levels, recipe, 3, config);
  ASSERT_EQ(result.rows.size(), 6u);
  std::size_t index = 0;
  for (double level : levels) {
    for (int run = 0; run < 3; ++run, ++index) {
      EXPECT_EQ(result.rows[index].noise_sigma_px, level);
      EXPECT_EQ(result.rows[index].run, run);
      if (result.rows[index].ransac_ok) {
        EXPECT_GE(result.rows[index].ransac_inlier_recall, 0.0);
        EXPECT_LE(result.rows[index].ransac_inlier_recall, 1.0);
      }
    }
  }
}

TEST(RunNoiseSweep, DeterministicForFixedConfig) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  RansacConfig config;
  config.iterations = 40;
  config.seed = 3;
  const std::vector<double> levels = {0.5};
  const NoiseSweepResult first = run_noise_sweep(levels, recipe, 2, config);
  const NoiseSweepResult second = run_noise_sweep(levels, recipe, 2, config);
  ASSERT_EQ(first.rows.size(), second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    EXPECT_EQ(first.rows[i].ransac_ok, second.rows[i].ransac_ok);
    EXPECT_EQ(first.rows[i].ransac.rotation_error_deg,
              second.rows[i].ransac.rotation_error_deg);
    EXPECT_EQ(first.rows[i].ransac_inlier_recall,
              second.rows[i].ransac_inlier_recall);
    EXPECT_EQ(first.rows[i].minimal_ok, second.rows[i].minimal_ok);
    EXPECT_EQ(first.rows[i].minimal.depth_rmse,
              second.rows[i].minimal.depth_rmse);
  }
}

TEST(RunTiming, ReportsPositiveTimesForBothPaths) {
  SceneRecipe recipe;
  recipe.coplanar = true;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  const TimingResult result = run_timing(recipe, 20, 7);
  EXPECT_EQ(result.trials, 20);
  EXPECT_GT(result.coplanar_mean_us, 0.0);
  EXPECT_GT(result.coplanar_median_us, 0.0);
  EXPECT_GT(result.general_mean_us, 0.0);
  EXPECT_GT(result.general_median_us, 0.0);
  EXPECT_GT(result.median_speedup(), 1.0);
}

TEST(WriteStabilityCsv, EmitsHeaderAndOneRowPerTrial) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  const StabilityResult result = run_stability(5, recipe, 11);
  std::ostringstream out;
  write_stability_csv(result, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("trial,", 0), 0u);
  EXPECT_EQ(count_lines(text), 6);
  EXPECT_NE(text.find("\r\n"), std::string::npos);

  std::ostringstream again;
  write_stability_csv(result, again);
  EXPECT_EQ(text, again.str());
}

TEST(WriteNoiseSweepCsv, EmitsHeaderAndOneRowPerRun) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  RansacConfig config;
  config.iterations = 30;
  const NoiseSweepResult result =
      run_noise_sweep({0.0, 1.0}, recipe, 2, config);
  std::ostringstream out;
  write_noise_sweep_csv(result, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("noise_sigma_px,", 0), 0u);
  EXPECT_EQ(count_lines(text), 5);
  EXPECT_NE(text.find("\r\n"), std::string::npos);
}

TEST(WriteTimingCsv, EmitsSummaryRow) {
  SceneRecipe recipe;
  recipe.coplanar = true;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  const TimingResult result = run_timing(recipe, 5, 13);
  std::ostringstream out;
  write_timing_csv(result, out);
  const std::string text = out.str();
  EXPECT_EQ(count_lines(text), 2);
  EXPECT_NE(text.find("\r\n"), std::string::npos);
}

}  // namespace
}  // namespace gpas
