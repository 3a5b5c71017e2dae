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

#include <array>
#include <cstdint>
#include <vector>

#include "gpas/alignment.h"
#include "gpas/congruence.h"
#include "gpas/result.h"
#include "gpas/types.h"

namespace gpas {

struct SolverVariant {
  // Model fitted to each recovered point tuple: a similarity transform
  // (Umeyama) or an affine transform (exact 12-parameter fit).
  enum class Alignment { kPlusS, kPlusA };
  // Whether to solve only the sample order or all six pairings of the
  // quadruple into two line pairs.
  enum class Permutations { kOneP, kSixP };

  Alignment alignment = Alignment::kPlusS;
  Permutations permutations = Permutations::kOneP;
  double coplanar_tol = kDefaultCoplanarTol;
  // Routes coplanar inputs through the general solver; used for timing
  // comparisons on matched inputs.
  bool force_general_path = false;
};

struct Hypothesis {
  enum class Kind { kSimilarity, kAffine };

  Kind kind = Kind::kSimilarity;
  SimilarityTransform similarity;
  AffineTransform affine;
  // Depth along each sample ray, in sample order.
  Eigen::Vector4d depths = Eigen::Vector4d::Zero();
  // Order in which the sample was fed to the constraint builder.
  std::array<int, 4> source_permutation = {0, 1, 2, 3};
  bool coplanar_path = false;
};

// Solves one minimal problem: builds the congruence constraints for each
// requested permutation, dispatches to the coplanar or the general depth
// solver, and fits one transform per nonnegative depth tuple. Duplicate
// world points fail with kDegenerateInput. When every permutation fails the
// result carries the most informative underlying error, or kNoHypothesis if
// the solvers ran but produced no usable depth tuple.
Result<std::vector<Hypothesis>> solve_minimal(
    const std::array<Correspondence, 4>& sample,
    const SolverVariant& variant = {}, std::uint64_t seed = 0);

// Number of hypotheses solve_minimal would return; 0 on any error.
int count_valid_solutions(const std::array<Correspondence, 4>& sample,
                          const SolverVariant& variant = {},
                          std::uint64_t seed = 0);

}  // namespace gpas
