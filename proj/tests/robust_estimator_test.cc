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

#include "gpas/robust_estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "gpas/synthetic.h"
#include "test_util.h"

namespace gpas {
namespace {

SceneRecipe clean_recipe(std::uint64_t seed) {
  SceneRecipe recipe;
  recipe.transform = SceneRecipe::Transform::kRandomSimilarity;
  recipe.seed = seed;
  return recipe;
}

TEST(Estimate, RecoversCleanScene) {
  const SyntheticProblem problem = generate(clean_recipe(1));
  RansacConfig config;
  config.iterations = 200;
  config.seed = 7;
  const auto result =
      estimate(problem.correspondences, problem.rig, config);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->iterations_run, 200);
  EXPECT_EQ(result->inlier_indices.size(), problem.correspondences.size());
  const ErrorReport report =
      error_report(result->transform, problem.ground_truth, problem);
  EXPECT_LT(report.rotation_error_deg, 1e-4);
  EXPECT_LT(report.scale_error_rel, 1e-6);
  EXPECT_LT(report.translation_error_rel, 1e-5);
}

TEST(Estimate, ToleratesOutliers) {
  SceneRecipe recipe = clean_recipe(3);
  recipe.noise_sigma_px = 0.5;
  recipe.outlier_fraction = 0.3;
  const SyntheticProblem problem = generate(recipe);
  RansacConfig config;
  config.iterations = 500;
  config.seed = 11;
  const auto result =
      estimate(problem.correspondences, problem.rig, config);
  ASSERT_TRUE(result.ok());
  const ErrorReport report = error_report(
      result->transform, problem.ground_truth, problem, config.inlier_threshold_px);
  EXPECT_LT(report.rotation_error_deg, 0.5);
  EXPECT_GE(report.inlier_count,
            static_cast<int>(0.9 * problem.true_inlier_count()));
}

TEST(Estimate, DeterministicForFixedSeed) {
  SceneRecipe recipe = clean_recipe(5);
  recipe.noise_sigma_px = 1.0;
  recipe.outlier_fraction = 0.2;
  const SyntheticProblem problem = generate(recipe);
  RansacConfig config;
  config.iterations = 150;
  config.seed = 13;
  const auto first = estimate(problem.correspondences, problem.rig, config);
  const auto second = estimate(problem.correspondences, problem.rig, config);
  ASSERT_TRUE(first.ok());
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(first->transform.scale, second->transform.scale);
  EXPECT_EQ(first->transform.rotation, second->transform.rotation);
  EXPECT_EQ(first->transform.translation, second->transform.translation);
  EXPECT_EQ(first->inlier_indices, second->inlier_indices);
  EXPECT_EQ(first->score_history, second->score_history);
  EXPECT_EQ(first->hypotheses_evaluated, second->hypotheses_evaluated);
  EXPECT_EQ(first->coplanar_path_hypotheses, second->coplanar_path_hypotheses);
  EXPECT_EQ(first->general_path_hypotheses, second->general_path_hypotheses);
}

TEST(Estimate, RequiresFourCorrespondences) {
  const SyntheticProblem problem = generate(clean_recipe(7));
  const std::span<const Correspondence> three(
      problem.correspondences.data(), 3);
  const auto result = estimate(three, problem.rig);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.error(), Error::kEstimationFailure);
}

TEST(Estimate, ScoreHistoryIsMonotoneBestSoFar) {
  SceneRecipe recipe = clean_recipe(9);
  recipe.noise_sigma_px = 1.0;
  recipe.outlier_fraction = 0.4;
  const SyntheticProblem problem = generate(recipe);
  RansacConfig config;
  config.iterations = 300;
  config.seed = 17;
  const auto result = estimate(problem.correspondences, problem.rig, config);
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result->score_history.size(),
            static_cast<std::size_t>(config.iterations));
  for (std::size_t i = 1; i < result->score_history.size(); ++i) {
    EXPECT_GE(result->score_history[i], result->score_history[i - 1]);
  }
  EXPECT_EQ(result->score_history.back(),
            *std::max_element(result->score_history.begin(),
                              result->score_history.end()));
  EXPECT_EQ(result->hypotheses_evaluated,
            result->coplanar_path_hypotheses + result->general_path_hypotheses);
}

TEST(Estimate, AffineVariantReportsAffineWinner) {
  const SyntheticProblem problem = generate(clean_recipe(11));
  RansacConfig config;
  config.iterations = 200;
  config.seed = 19;
  config.variant.alignment = SolverVariant::Alignment::kPlusA;
  const auto result = estimate(problem.correspondences, problem.rig, config);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->best_hypothesis_kind, Hypothesis::Kind::kAffine);
  const ErrorReport report =
      error_report(result->transform, problem.ground_truth, problem);
  EXPECT_LT(report.rotation_error_deg, 1e-3);
}

TEST(ReprojectionError, InfiniteBehindCamera) {
  GeneralizedCamera rig;
  PinholeCamera camera;
  camera.center = Vec3::Zero();
  rig.cameras.push_back(camera);

  Correspondence c;
  c.camera_index = 0;
  c.world_point = Vec3(0.0, 0.0, -5.0);
  c.pixel = Vec2(500.0, 500.0);
  c.ray = backproject(camera, c.pixel);

  SimilarityTransform identity;
  EXPECT_TRUE(std::isinf(reprojection_error(identity, c, rig)));

  c.world_point = Vec3(0.0, 0.0, 5.0);
  EXPECT_LT(reprojection_error(identity, c, rig), 1e-9);
}

}  // namespace
}  // namespace gpas
