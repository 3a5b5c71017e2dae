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
#include <vector>

#include "gpas/monomials.h"
#include "gpas/result.h"

namespace gpas {

// Four quadratic equations in four unknowns, one coefficient row per
// equation over the shared monomial basis.
struct QuadricSystem {
  Eigen::Matrix<double, 4, kNumMonomials> coeffs =
      Eigen::Matrix<double, 4, kNumMonomials>::Zero();
};

// A system of four quadrics has at most 2^4 isolated complex solutions.
inline constexpr int kMaxSolutions = 16;

struct Solution {
  Eigen::Vector4d values = Eigen::Vector4d::Zero();
  // Max absolute equation value on the row-normalized system.
  double residual = 0.0;
};

using SolutionSet = std::vector<Solution>;

struct SolveOptions {
  // Acceptance threshold on the residual of the row-normalized system.
  double residual_tol = 1e-6;
  // Relative distance below which two roots are merged.
  double merge_tol = 1e-7;
  // Components above -slack count as nonnegative in filter_positive.
  double positivity_slack = 1e-9;
  // Seed for the random start-system constants; fixed seed, fixed output.
  std::uint64_t seed = 0;
};

// Finds all real solutions by continuation: 16 paths are tracked from the
// roots of an embedded generic instance along the segment between the two
// coefficient matrices, endpoints are Newton-polished, real endpoints are
// kept, merged and sorted lexicographically. Fails with kSolverFailure only
// when no path yields a certified endpoint; a system without real solutions
// returns an empty set.
Result<SolutionSet> solve(const QuadricSystem& system,
                          const SolveOptions& options = {});

// Start grid for the brute-force fallback solver.
struct GridSpec {
  double lo = -10.0;
  double hi = 10.0;
  int nodes_per_axis = 9;
};

// Grid matched to scene dimensions: symmetric bounds at ten times the
// largest pinhole separation (plus one).
GridSpec default_grid(double max_pinhole_distance);

// Damped-Newton multistart from every grid node. Slow and independent of the
// continuation backend; intended as a cross-check, not for production use.
SolutionSet oracle_solve(const QuadricSystem& system,
                         const GridSpec& grid = {});

// Keeps solutions whose components are all >= -slack, clamping small
// negative components to zero.
SolutionSet filter_positive(const SolutionSet& solutions,
                            double slack = 1e-9);

}  // namespace gpas
