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
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "gpas/alignment.h"
#include "gpas/parallel.h"
#include "gpas/random.h"

namespace gpas {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double pixel_error(const Vec3& mapped, const Correspondence& correspondence,
                   const GeneralizedCamera& rig) {
  const Result<Vec2> projected =
      project(rig.cameras[correspondence.camera_index], mapped);
  if (!projected.ok()) {
    return kInfinity;
  }
  return (*projected - correspondence.pixel).norm();
}

struct Score {
  int count = 0;
  double mean_inlier_error = kInfinity;
};

template <typename Transform>
Score score_hypothesis(const Transform& transform,
                       std::span<const Correspondence> correspondences,
                       const GeneralizedCamera& rig, double threshold) {
  Score score;
  double error_sum = 0.0;
  for (const Correspondence& c : correspondences) {
    const double err = pixel_error(transform.apply(c.world_point), c, rig);
    if (err < threshold) {
      ++score.count;
      error_sum += err;
    }
  }
  if (score.count > 0) {
    score.mean_inlier_error = error_sum / score.count;
  }
  return score;
}

template <typename Transform>
std::vector<int> inliers_of(const Transform& transform,
                            std::span<const Correspondence> correspondences,
                            const GeneralizedCamera& rig, double threshold) {
  std::vector<int> inliers;
  for (int i = 0; i < static_cast<int>(correspondences.size()); ++i) {
    const double err = pixel_error(transform.apply(correspondences[i].world_point),
                                   correspondences[i], rig);
    if (err < threshold) {
      inliers.push_back(i);
    }
  }
  return inliers;
}

// Pairs each inlier world point with the nearest point on its observation
// ray to the transformed point. A 3D offset of the mapped point moves the
// reprojection by roughly focal / depth pixels per unit, so each pair also
// carries that factor squared as a least-squares weight: the weighted 3D fit
// then approximates a pixel-space fit instead of over-weighting far points.
struct AnchoredPairs {
  std::vector<PointPair> pairs;
  std::vector<double> weights;
};

template <typename Transform>
AnchoredPairs ray_anchored_pairs(
    const Transform& transform, std::span<const Correspondence> correspondences,
    const GeneralizedCamera& rig, const std::vector<int>& inliers) {
  AnchoredPairs anchored;
  anchored.pairs.reserve(inliers.size());
  anchored.weights.reserve(inliers.size());
  for (const int index : inliers) {
    const Correspondence& c = correspondences[index];
    const Vec3 mapped = transform.apply(c.world_point);
    const double depth =
        std::max(0.0, c.ray.direction.dot(mapped - c.ray.origin));
    anchored.pairs.push_back({c.world_point, c.ray.point_at(depth)});
    const double pixels_per_unit =
        rig.cameras[c.camera_index].focal_length / std::max(depth, 1e-3);
    anchored.weights.push_back(pixels_per_unit * pixels_per_unit);
  }
  return anchored;
}

struct IterationOutcome {
  bool valid = false;
  Score score;
  Hypothesis::Kind kind = Hypothesis::Kind::kSimilarity;
  SimilarityTransform similarity;
  AffineTransform affine;
  int hypotheses = 0;
  int coplanar_hypotheses = 0;
};

// How many top-ranked hypotheses are refined, and for how many rounds of
// alternating reclassification and refitting each. Supporters are collected
// at an annealed multiple of the inlier threshold: wide rounds let
// borderline points guide the fit before the consensus is frozen, which
// keeps the refit from stalling on a partial fixed point.
constexpr int kRefineCandidates = 16;
constexpr int kMaxRefitRounds = 24;
constexpr std::array<double, 8> kCollectMultipliers = {4.0,  3.0, 2.5, 2.0,
                                                       1.75, 1.5, 1.25, 1.0};

double collect_multiplier(int round) {
  const int last = static_cast<int>(kCollectMultipliers.size()) - 1;
  return kCollectMultipliers[std::min(round, last)];
}

struct RefinedCandidate {
  bool valid = false;
  SimilarityTransform transform;
  std::vector<int> inliers;
  Score score;
};

RefinedCandidate refine_similarity(
    SimilarityTransform model, std::span<const Correspondence> correspondences,
    const GeneralizedCamera& rig, double threshold) {
  RefinedCandidate out;
  std::vector<int> supporters;
  for (int round = 0; round < kMaxRefitRounds; ++round) {
    const double collect = threshold * collect_multiplier(round);
    std::vector<int> next =
        inliers_of(model, correspondences, rig, collect);
    if (next.size() < 4) {
      break;
    }
    const bool stable = collect == threshold && next == supporters;
    supporters = std::move(next);
    if (stable) {
      break;
    }
    const AnchoredPairs anchored =
        ray_anchored_pairs(model, correspondences, rig, supporters);
    const Result<SimilarityTransform> refit =
        umeyama_similarity(anchored.pairs, anchored.weights);
    if (!refit.ok()) {
      break;
    }
    model = *refit;
    out.valid = true;
    out.transform = model;
  }
  if (out.valid) {
    out.inliers = inliers_of(out.transform, correspondences, rig, threshold);
    out.score =
        score_hypothesis(out.transform, correspondences, rig, threshold);
  }
  return out;
}

RefinedCandidate refine_affine(AffineTransform model,
                               std::span<const Correspondence> correspondences,
                               const GeneralizedCamera& rig,
                               double threshold) {
  bool refined = false;
  std::vector<int> supporters;
  for (int round = 0; round < kMaxRefitRounds; ++round) {
    const double collect = threshold * collect_multiplier(round);
    std::vector<int> next =
        inliers_of(model, correspondences, rig, collect);
    if (next.size() < 4) {
      break;
    }
    const bool stable = collect == threshold && next == supporters;
    supporters = std::move(next);
    if (stable) {
      break;
    }
    const AnchoredPairs anchored =
        ray_anchored_pairs(model, correspondences, rig, supporters);
    const Result<AffineTransform> refit =
        affine_fit(anchored.pairs, anchored.weights);
    if (!refit.ok()) {
      break;
    }
    model = *refit;
    refined = true;
  }
  RefinedCandidate out;
  if (!refined) {
    return out;
  }
  const std::vector<int> inliers =
      inliers_of(model, correspondences, rig, threshold);
  if (inliers.size() < 3) {
    return out;
  }
  const AnchoredPairs anchored =
      ray_anchored_pairs(model, correspondences, rig, inliers);
  const Result<SimilarityTransform> similarity =
      similarity_from_affine_inliers(anchored.pairs, anchored.weights);
  if (!similarity.ok()) {
    return out;
  }
  out.valid = true;
  out.transform = *similarity;
  out.inliers = inliers_of(out.transform, correspondences, rig, threshold);
  out.score = score_hypothesis(out.transform, correspondences, rig, threshold);
  return out;
}

}  // namespace

double reprojection_error(const SimilarityTransform& transform,
                          const Correspondence& correspondence,
                          const GeneralizedCamera& rig) {
  return pixel_error(transform.apply(correspondence.world_point),
                     correspondence, rig);
}

double reprojection_error(const AffineTransform& transform,
                          const Correspondence& correspondence,
                          const GeneralizedCamera& rig) {
  return pixel_error(transform.apply(correspondence.world_point),
                     correspondence, rig);
}

Result<RansacResult> estimate(std::span<const Correspondence> correspondences,
                              const GeneralizedCamera& rig,
                              const RansacConfig& config) {
  const int n = static_cast<int>(correspondences.size());
  if (n < 4 || config.iterations <= 0) {
    return Error::kEstimationFailure;
  }
  const double threshold = config.inlier_threshold_px;

  std::vector<IterationOutcome> outcomes(config.iterations);
  parallel_for(config.iterations, [&](int it) {
    std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(it)));
    std::uniform_int_distribution<int> index_dist(0, n - 1);

    std::array<int, 4> picked;
    int num_picked = 0;
    while (num_picked < 4) {
      const int candidate = index_dist(rng);
      bool fresh = true;
      for (int j = 0; j < num_picked; ++j) {
        if (picked[j] == candidate) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        picked[num_picked++] = candidate;
      }
    }

    std::array<Correspondence, 4> sample;
    for (int j = 0; j < 4; ++j) {
      sample[j] = correspondences[picked[j]];
    }

    const std::uint64_t solver_seed =
        derive_seed(config.seed ^ 0x9D2C5680FULL, static_cast<std::uint64_t>(it));
    const Result<std::vector<Hypothesis>> hypotheses =
        solve_minimal(sample, config.variant, solver_seed);
    if (!hypotheses.ok()) {
      return;
    }

    IterationOutcome& out = outcomes[it];
    for (const Hypothesis& hypothesis : hypotheses.value()) {
      ++out.hypotheses;
      if (hypothesis.coplanar_path) {
        ++out.coplanar_hypotheses;
      }
      Score score;
      if (hypothesis.kind == Hypothesis::Kind::kSimilarity) {
        score = score_hypothesis(hypothesis.similarity, correspondences, rig,
                                 threshold);
      } else {
        score = score_hypothesis(hypothesis.affine, correspondences, rig,
                                 threshold);
      }
      const bool better =
          !out.valid || score.count > out.score.count ||
          (score.count == out.score.count &&
           score.mean_inlier_error < out.score.mean_inlier_error);
      if (better) {
        out.valid = true;
        out.score = score;
        out.kind = hypothesis.kind;
        out.similarity = hypothesis.similarity;
        out.affine = hypothesis.affine;
      }
    }
  });

  RansacResult result;
  result.iterations_run = config.iterations;
  result.score_history.resize(config.iterations, 0);

  int running_best = 0;
  for (int it = 0; it < config.iterations; ++it) {
    const IterationOutcome& out = outcomes[it];
    result.hypotheses_evaluated += out.hypotheses;
    result.coplanar_path_hypotheses += out.coplanar_hypotheses;
    result.general_path_hypotheses += out.hypotheses - out.coplanar_hypotheses;
    if (out.valid) {
      running_best = std::max(running_best, out.score.count);
    }
    result.score_history[it] = running_best;
  }

  // The top raw hypotheses are each refined by alternating reclassification
  // and refitting; the best refined model wins. Refining several candidates
  // lets a partial consensus with a slightly lower raw count overtake a
  // locally optimal competitor.
  std::vector<int> ranked;
  for (int it = 0; it < config.iterations; ++it) {
    if (outcomes[it].valid) {
      ranked.push_back(it);
    }
  }
  std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    const Score& sa = outcomes[a].score;
    const Score& sb = outcomes[b].score;
    if (sa.count != sb.count) {
      return sa.count > sb.count;
    }
    if (sa.mean_inlier_error != sb.mean_inlier_error) {
      return sa.mean_inlier_error < sb.mean_inlier_error;
    }
    return a < b;
  });
  if (static_cast<int>(ranked.size()) > kRefineCandidates) {
    ranked.resize(kRefineCandidates);
  }

  RefinedCandidate winner;
  for (const int index : ranked) {
    const IterationOutcome& candidate = outcomes[index];
    RefinedCandidate refined =
        candidate.kind == Hypothesis::Kind::kSimilarity
            ? refine_similarity(candidate.similarity, correspondences, rig,
                                threshold)
            : refine_affine(candidate.affine, correspondences, rig, threshold);
    if (!refined.valid) {
      continue;
    }
    const bool better =
        !winner.valid || refined.score.count > winner.score.count ||
        (refined.score.count == winner.score.count &&
         refined.score.mean_inlier_error < winner.score.mean_inlier_error);
    if (better) {
      winner = std::move(refined);
      result.best_hypothesis_kind = candidate.kind;
    }
  }

  if (!winner.valid || winner.score.count < 4) {
    return Error::kEstimationFailure;
  }
  result.transform = winner.transform;
  result.inlier_indices = std::move(winner.inliers);
  return result;
}

}  // namespace gpas
