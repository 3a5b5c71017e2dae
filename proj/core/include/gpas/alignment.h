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

#include <span>

#include "gpas/result.h"
#include "gpas/types.h"

namespace gpas {

struct PointPair {
  Vec3 source = Vec3::Zero();
  Vec3 target = Vec3::Zero();
};

// Least-squares similarity transform mapping sources onto targets: the
// rotation comes from the SVD of the cross-covariance with a determinant
// sign correction (so it is always a proper rotation, even for reflected
// data), the scale from the corrected singular-value trace over the source
// variance. Needs >= 3 non-collinear pairs; fails with
// kDegenerateConfiguration otherwise or when the data admits no positive
// scale.
//
// The weighted overload minimizes the weighted squared residual instead.
// Weights must be nonnegative, one per pair, with a positive total; pass a
// weight proportional to the inverse variance of each pair's target.
Result<SimilarityTransform> umeyama_similarity(
    std::span<const PointPair> pairs);
Result<SimilarityTransform> umeyama_similarity(std::span<const PointPair> pairs,
                                               std::span<const double> weights);

// Least-squares affine transform mapping sources onto targets, solved per
// output coordinate by Householder QR. Exactly interpolates four pairs in
// general position. Needs >= 4 non-coplanar sources; fails with
// kDegenerateConfiguration otherwise. The weighted overload follows the same
// weight contract as umeyama_similarity.
Result<AffineTransform> affine_fit(std::span<const PointPair> pairs);
Result<AffineTransform> affine_fit(std::span<const PointPair> pairs,
                                   std::span<const double> weights);

// Final similarity for the affine variant: a plain Umeyama fit over the
// inlier pair set.
Result<SimilarityTransform> similarity_from_affine_inliers(
    std::span<const PointPair> pairs);
Result<SimilarityTransform> similarity_from_affine_inliers(
    std::span<const PointPair> pairs, std::span<const double> weights);

}  // namespace gpas
