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

#include "gpas/alignment.h"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "gpas/random.h"
#include "gpas/synthetic.h"
#include "test_util.h"

namespace gpas {
namespace {

std::vector<Vec3> random_points(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::vector<Vec3> points(count);
  for (auto& p : points) {
    p = Vec3(coord(rng), coord(rng), coord(rng));
  }
  return points;
}

double alignment_cost(const SimilarityTransform& transform,
                      const std::vector<PointPair>& pairs) {
  double cost = 0.0;
  for (const PointPair& pair : pairs) {
    cost += (transform.apply(pair.source) - pair.target).squaredNorm();
  }
  return cost;
}

TEST(UmeyamaSimilarity, RecoversExactTransform) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const SimilarityTransform truth = random_similarity(rng);
    const std::vector<Vec3> sources = random_points(rng, 4 + trial % 5);
    std::vector<PointPair> pairs;
    for (const Vec3& source : sources) {
      pairs.push_back({source, truth.apply(source)});
    }
    const auto estimate = umeyama_similarity(pairs);
    ASSERT_TRUE(estimate.ok());
    EXPECT_LT(test::rotation_error_between(estimate->rotation, truth.rotation),
              1e-9);
    EXPECT_LT(std::abs(estimate->scale - truth.scale) / truth.scale, 1e-12);
    EXPECT_LT((estimate->translation - truth.translation).norm(),
              1e-9 * (1.0 + truth.translation.norm()));
  }
}

TEST(UmeyamaSimilarity, ReturnsProperRotationForReflectedTargets) {
  std::mt19937_64 rng(17);
  Mat3 mirror = Mat3::Identity();
  mirror(2, 2) = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Vec3> sources = random_points(rng, 6);
    std::vector<PointPair> pairs;
    for (const Vec3& source : sources) {
      pairs.push_back({source, 1.5 * (mirror * source) + Vec3(1.0, 2.0, 3.0)});
    }
    const auto estimate = umeyama_similarity(pairs);
    ASSERT_TRUE(estimate.ok());
    EXPECT_TRUE(is_rotation_matrix(estimate->rotation, 1e-9));
    EXPECT_GT(estimate->rotation.determinant(), 0.0);
    EXPECT_GT(estimate->scale, 0.0);
  }
}

TEST(UmeyamaSimilarity, RejectsCollinearPoints) {
  std::vector<PointPair> pairs;
  for (int i = 0; i < 5; ++i) {
    const Vec3 source(static_cast<double>(i), 0.0, 0.0);
    pairs.push_back({source, source + Vec3(1.0, 1.0, 1.0)});
  }
  const auto estimate = umeyama_similarity(pairs);
  ASSERT_FALSE(estimate.ok());
  EXPECT_EQ(estimate.error(), Error::kDegenerateConfiguration);
}

TEST(UmeyamaSimilarity, MinimizesSquaredResiduals) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const SimilarityTransform truth = random_similarity(rng);
  const std::vector<Vec3> sources = random_points(rng, 12);
  std::vector<PointPair> pairs;
  for (const Vec3& source : sources) {
    const Vec3 jitter(noise(rng), noise(rng), noise(rng));
    pairs.push_back({source, truth.apply(source) + jitter});
  }
  const auto estimate = umeyama_similarity(pairs);
  ASSERT_TRUE(estimate.ok());
  const double best = alignment_cost(*estimate, pairs);
  for (int trial = 0; trial < 40; ++trial) {
    SimilarityTransform perturbed = *estimate;
    const Vec3 axis =
        Vec3(unit(rng), unit(rng), unit(rng)).normalized();
    const double angle = 1e-3 * unit(rng);
    perturbed.rotation =
        Eigen::AngleAxisd(angle, axis).toRotationMatrix() * perturbed.rotation;
    perturbed.scale *= 1.0 + 1e-4 * unit(rng);
    perturbed.translation += 1e-3 * Vec3(unit(rng), unit(rng), unit(rng));
    EXPECT_GE(alignment_cost(perturbed, pairs), best);
  }
}

TEST(AffineFit, InterpolatesFourGeneralPositionPairs) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const test::ForwardProblem p = test::make_forward_problem(trial);
    std::vector<PointPair> pairs;
    for (int i = 0; i < 4; ++i) {
      pairs.push_back(
          {p.world[i], Vec3(coord(rng), coord(rng), coord(rng))});
    }
    const auto fit = affine_fit(pairs);
    ASSERT_TRUE(fit.ok());
    for (const PointPair& pair : pairs) {
      EXPECT_LT((fit->apply(pair.source) - pair.target).norm(),
                1e-10 * (1.0 + pair.target.norm()));
    }
  }
}

TEST(AffineFit, RecoversKnownAffineMap) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  AffineTransform truth;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      truth.linear(r, c) = entry(rng);
    }
  }
  truth.linear += 3.0 * Mat3::Identity();
  truth.translation = Vec3(1.0, -2.0, 0.5);
  const std::vector<Vec3> sources = random_points(rng, 20);
  std::vector<PointPair> pairs;
  for (const Vec3& source : sources) {
    pairs.push_back({source, truth.apply(source)});
  }
  const auto fit = affine_fit(pairs);
  ASSERT_TRUE(fit.ok());
  EXPECT_LT((fit->linear - truth.linear).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((fit->translation - truth.translation).norm(), 1e-10);
}

TEST(AffineFit, RejectsCoplanarSources) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::vector<PointPair> pairs;
  for (int i = 0; i < 6; ++i) {
    const Vec3 source(coord(rng), coord(rng), 2.0);
    pairs.push_back({source, Vec3(coord(rng), coord(rng), coord(rng))});
  }
  const auto fit = affine_fit(pairs);
  ASSERT_FALSE(fit.ok());
  EXPECT_EQ(fit.error(), Error::kDegenerateConfiguration);
}

TEST(SimilarityFromAffineInliers, MatchesUmeyama) {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> noise(0.0, 0.05);
  const SimilarityTransform truth = random_similarity(rng);
  const std::vector<Vec3> sources = random_points(rng, 15);
  std::vector<PointPair> pairs;
  for (const Vec3& source : sources) {
    const Vec3 jitter(noise(rng), noise(rng), noise(rng));
    pairs.push_back({source, truth.apply(source) + jitter});
  }
  const auto direct = umeyama_similarity(pairs);
  const auto refit = similarity_from_affine_inliers(pairs);
  ASSERT_TRUE(direct.ok());
  ASSERT_TRUE(refit.ok());
  EXPECT_EQ(refit->scale, direct->scale);
  EXPECT_EQ(refit->rotation, direct->rotation);
  EXPECT_EQ(refit->translation, direct->translation);
}

}  // namespace
}  // namespace gpas
