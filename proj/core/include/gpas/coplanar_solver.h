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

#include "gpas/congruence.h"
#include "gpas/quadric_solver.h"
#include "gpas/result.h"
#include "gpas/types.h"

namespace gpas {

// Closed-form elimination for coplanar world points: the intersection
// constraint expresses the first three depths as linear functions of the
// fourth, s_k = g[k] * s4 + h[k] for k in {0, 1, 2}.
struct CoplanarReduction {
  Vec3 g = Vec3::Zero();
  Vec3 h = Vec3::Zero();
};

// a * s4^2 + b * s4 + c = 0.
struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Solves the intersection constraint for (s1, s2, s3) by Cramer's rule.
// Fails with kSingularConfiguration when the (row-normalized) determinant is
// below 1e-12.
Result<CoplanarReduction> reduce(const std::array<Ray, 4>& rays,
                                 const CongruenceRatios& ratios);

// Substitutes the reduction into the (e12, e13) distance-ratio constraint,
// leaving one quadratic in s4. `k1213` is the squared-distance ratio of the
// known points.
QuadraticCoefficients quadratic_coefficients(const CoplanarReduction& reduction,
                                             const std::array<Ray, 4>& rays,
                                             double k1213);

// Full coplanar path: ratios, reduction, quadratic, back-substitution.
// Returns the nonnegative depth tuples (at most two); residuals are measured
// on the normalized coplanar constraints. Fails with kNoRealRoot when the
// quadratic has no real root beyond tolerance, and propagates
// kSingularConfiguration / kParallelLines / kDegenerateInput.
Result<SolutionSet> solve_coplanar(const std::array<Ray, 4>& rays,
                                   const std::array<Vec3, 4>& points);

}  // namespace gpas
