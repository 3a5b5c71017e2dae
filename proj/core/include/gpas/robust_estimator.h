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
#include <span>
#include <vector>

#include "gpas/minimal_solver.h"
#include "gpas/result.h"
#include "gpas/types.h"

namespace gpas {

struct RansacConfig {
  // Fixed iteration count; no early termination, so runs are reproducible.
  int iterations = 1000;
  double inlier_threshold_px = 2.5;
  std::uint64_t seed = 0;
  SolverVariant variant;
};

struct RansacResult {
  // Final similarity transform (after refit; for the affine variant this is
  // the Umeyama fit over the best affine hypothesis's inliers).
  SimilarityTransform transform;
  // For the similarity variant: indices within threshold under `transform`.
  // For the affine variant: indices within threshold under the winning
  // affine hypothesis at selection time.
  std::vector<int> inlier_indices;
  int iterations_run = 0;
  Hypothesis::Kind best_hypothesis_kind = Hypothesis::Kind::kSimilarity;
  // Best raw hypothesis inlier count seen up to and including each
  // iteration; the final refined model may exceed the last entry.
  std::vector<int> score_history;
  // Diagnostics: hypotheses scored, split by solver path.
  long long hypotheses_evaluated = 0;
  long long coplanar_path_hypotheses = 0;
  long long general_path_hypotheses = 0;
};

// Euclidean pixel distance between the stored observation and the projection
// of the transformed world point; +infinity when the point lands behind the
// camera.
double reprojection_error(const SimilarityTransform& transform,
                          const Correspondence& correspondence,
                          const GeneralizedCamera& rig);
double reprojection_error(const AffineTransform& transform,
                          const Correspondence& correspondence,
                          const GeneralizedCamera& rig);

// Fixed-iteration RANSAC over minimal samples. Every iteration draws its
// sample from an independent seed-derived stream, so results do not depend
// on thread count. Hypotheses are ranked by inlier count, then lower mean
// inlier reprojection error, then earlier iteration; the top few are refined
// by alternating inlier reclassification and least-squares refitting until
// the consensus set stabilizes, and the best refined model is returned.
// Fails with kEstimationFailure when fewer than 4 correspondences are given
// or no refined model reaches 4 inliers.
Result<RansacResult> estimate(std::span<const Correspondence> correspondences,
                              const GeneralizedCamera& rig,
                              const RansacConfig& config = {});

}  // namespace gpas
