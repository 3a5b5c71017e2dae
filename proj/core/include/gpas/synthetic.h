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
#include <random>
#include <vector>

#include "gpas/types.h"

namespace gpas {

struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
};

// Recipe for a synthetic generalized-camera scene: points in a cube observed
// by pinholes in a separate box, all looking toward the cloud centroid with
// a random roll. Projections falling outside the image are redrawn.
struct SceneRecipe {
  int num_points = 100;
  Box point_cube = {Vec3(-10.0, -10.0, -10.0), Vec3(10.0, 10.0, 10.0)};
  int num_cameras = 10;
  Box camera_box = {Vec3(-5.0, -5.0, 10.0), Vec3(5.0, 5.0, 20.0)};
  double focal_length = 1000.0;
  int image_width = 1000;
  int image_height = 1000;
  double noise_sigma_px = 0.0;
  // Fraction of correspondences re-pointed at uniformly random pixels.
  double outlier_fraction = 0.0;
  enum class Transform { kIdentity, kRandomSimilarity };
  Transform transform = Transform::kIdentity;
  // Places all points on one randomly posed plane inside the cube.
  bool coplanar = false;
  std::uint64_t seed = 0;
};

struct SyntheticProblem {
  GeneralizedCamera rig;
  std::vector<Correspondence> correspondences;
  // Maps the stored world points onto the observed scene points.
  SimilarityTransform ground_truth;
  // Distance from each pinhole to its true scene point (before noise).
  std::vector<double> ground_truth_depths;
  // False where the observation was replaced by a random pixel.
  std::vector<bool> inlier_mask;

  int true_inlier_count() const;
};

SyntheticProblem generate(const SceneRecipe& recipe);

// Scale log-uniform in [0.5, 2], rotation uniform over SO(3), translation
// uniform in [-5, 5]^3.
SimilarityTransform random_similarity(std::mt19937_64& rng);

// Angle of a rotation matrix in degrees, from its trace and skew part.
double rotation_angle_deg(const Mat3& rotation);

struct ErrorReport {
  double rotation_error_deg = 0.0;
  double translation_error = 0.0;
  double translation_error_rel = 0.0;
  double scale_error_rel = 0.0;
  // Mean reprojection error of the estimate over the true inliers.
  double mean_reprojection_error_px = 0.0;
  // True inliers whose reprojection error under the estimate is within the
  // threshold; divided by true_inlier_count() this is the inlier recall.
  int inlier_count = 0;
  // RMSE between estimate-induced ray depths and the true depths, over the
  // true inliers.
  double depth_rmse = 0.0;
};

ErrorReport error_report(const SimilarityTransform& estimate,
                         const SimilarityTransform& truth,
                         const SyntheticProblem& problem,
                         double inlier_threshold_px = 2.5);

}  // namespace gpas
