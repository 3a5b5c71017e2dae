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

#include "gpas/minimal_solver.h"

#include "gpas/coplanar_solver.h"
#include "gpas/quadric_solver.h"
#include "gpas/random.h"

namespace gpas {

namespace {

// Pairings of the quadruple into two segment pairs, as orderings.
constexpr std::array<std::array<int, 4>, 6> kPermutations = {{
    {0, 1, 2, 3},  // (12|34)
    {2, 3, 0, 1},  // (34|12)
    {0, 2, 1, 3},  // (13|24)
    {1, 3, 0, 2},  // (24|13)
    {0, 3, 1, 2},  // (14|23)
    {1, 2, 0, 3},  // (23|14)
}};

// Lower value wins when picking the error to surface for NoHypothesis.
int error_rank(Error error) {
  switch (error) {
    case Error::kDegenerateInput:
      return 0;
    case Error::kSingularConfiguration:
      return 1;
    case Error::kNoRealRoot:
      return 2;
    case Error::kParallelLines:
      return 3;
    case Error::kDegenerateConfiguration:
      return 4;
    case Error::kSolverFailure:
      return 5;
    default:
      return 6;
  }
}

}  // namespace

Result<std::vector<Hypothesis>> solve_minimal(
    const std::array<Correspondence, 4>& sample, const SolverVariant& variant,
    std::uint64_t seed) {
  std::array<Vec3, 4> points;
  std::array<Ray, 4> rays;
  for (int i = 0; i < 4; ++i) {
    points[i] = sample[i].world_point;
    rays[i] = sample[i].ray;
  }

  // Also rejects (near-)duplicate world points.
  const Result<bool> coplanar = coplanarity_test(points, variant.coplanar_tol);
  if (!coplanar.ok()) {
    return coplanar.error();
  }
  const bool use_coplanar_path = *coplanar && !variant.force_general_path;

  const int num_permutations =
      variant.permutations == SolverVariant::Permutations::kSixP ? 6 : 1;

  std::vector<Hypothesis> hypotheses;
  bool have_error = false;
  Error best_error = Error::kNoHypothesis;
  auto record_error = [&](Error error) {
    if (!have_error || error_rank(error) < error_rank(best_error)) {
      best_error = error;
      have_error = true;
    }
  };

  for (int pi = 0; pi < num_permutations; ++pi) {
    const std::array<int, 4>& perm = kPermutations[pi];
    std::array<Vec3, 4> pp;
    std::array<Ray, 4> pr;
    for (int i = 0; i < 4; ++i) {
      pp[i] = points[perm[i]];
      pr[i] = rays[perm[i]];
    }

    SolutionSet depth_solutions;
    if (use_coplanar_path) {
      Result<SolutionSet> solved = solve_coplanar(pr, pp);
      if (!solved.ok()) {
        record_error(solved.error());
        continue;
      }
      depth_solutions = std::move(*solved);
    } else {
      const Result<CongruenceRatios> ratios = compute_ratios(pp);
      if (!ratios.ok()) {
        record_error(ratios.error());
        continue;
      }
      const std::array<ConstraintRow, 2> ortho = orthogonality_rows(pr, *ratios);
      const Result<ConstraintRow> ratio_row_34 =
          distance_ratio_row(Edge::e12, Edge::e34, pr, *ratios);
      const Result<ConstraintRow> ratio_row_13 =
          distance_ratio_row(Edge::e12, Edge::e13, pr, *ratios);

      QuadricSystem system;
      system.coeffs.row(0) = ortho[0];
      system.coeffs.row(1) = ortho[1];
      system.coeffs.row(2) = *ratio_row_34;
      system.coeffs.row(3) = *ratio_row_13;

      SolveOptions options;
      options.seed = derive_seed(seed, static_cast<std::uint64_t>(pi));
      Result<SolutionSet> solved = solve(system, options);
      if (!solved.ok()) {
        record_error(solved.error());
        continue;
      }
      depth_solutions = filter_positive(*solved, options.positivity_slack);
    }

    for (const Solution& solution : depth_solutions) {
      std::array<PointPair, 4> pairs;
      for (int i = 0; i < 4; ++i) {
        pairs[i].source = pp[i];
        pairs[i].target = pr[i].point_at(solution.values(i));
      }

      Hypothesis hypothesis;
      hypothesis.source_permutation = perm;
      hypothesis.coplanar_path = use_coplanar_path;
      for (int i = 0; i < 4; ++i) {
        hypothesis.depths(perm[i]) = solution.values(i);
      }

      if (variant.alignment == SolverVariant::Alignment::kPlusS) {
        Result<SimilarityTransform> fit = umeyama_similarity(pairs);
        if (!fit.ok()) {
          record_error(fit.error());
          continue;
        }
        hypothesis.kind = Hypothesis::Kind::kSimilarity;
        hypothesis.similarity = *fit;
      } else {
        Result<AffineTransform> fit = affine_fit(pairs);
        if (!fit.ok()) {
          record_error(fit.error());
          continue;
        }
        hypothesis.kind = Hypothesis::Kind::kAffine;
        hypothesis.affine = *fit;
      }
      hypotheses.push_back(hypothesis);
    }
  }

  if (hypotheses.empty()) {
    return have_error ? best_error : Error::kNoHypothesis;
  }
  return hypotheses;
}

int count_valid_solutions(const std::array<Correspondence, 4>& sample,
                          const SolverVariant& variant, std::uint64_t seed) {
  const Result<std::vector<Hypothesis>> result =
      solve_minimal(sample, variant, seed);
  return result.ok() ? static_cast<int>(result->size()) : 0;
}

}  // namespace gpas
