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
#include <utility>

#include "gpas/monomials.h"
#include "gpas/result.h"
#include "gpas/types.h"

namespace gpas {

// Default threshold on the normalized tetrahedron volume below which four
// points are treated as coplanar.
inline constexpr double kDefaultCoplanarTol = 1e-9;

// Edges of the point quadruple (x1, x2, x3, x4), 1-based in the names.
enum class Edge { e12 = 0, e34, e13, e14, e23, e24 };

inline constexpr int kNumEdges = 6;

// 0-based endpoint indices of an edge.
std::pair<int, int> edge_endpoints(Edge edge);

// Shape invariants of a point quadruple that survive similarity transforms:
// the two closest-point line parameters of the (x1,x2) / (x3,x4) line pair
// and all squared edge lengths (from which the distance ratios are formed).
struct CongruenceRatios {
  // Signed parameter of the mutually closest point on line(x1,x2):
  // m' = x1 + r1 * (x2 - x1). May lie outside [0, 1].
  double r1 = 0.0;
  // Same for line(x3,x4): m'' = x3 + r2 * (x4 - x3).
  double r2 = 0.0;
  std::array<double, kNumEdges> squared_edge_length = {};

  // Squared-distance ratio d(num)^2 / d(den)^2.
  double ratio(Edge num, Edge den) const {
    return squared_edge_length[static_cast<int>(num)] /
           squared_edge_length[static_cast<int>(den)];
  }
};

// Normalized-volume coplanarity test: |(x2-x1) x (x3-x1) . (x4-x1)| / L^3
// with L the mean pairwise distance. Fails with kDegenerateInput when two
// points (nearly) coincide.
Result<bool> coplanarity_test(const std::array<Vec3, 4>& points,
                              double tol = kDefaultCoplanarTol);

// Computes r1, r2 and the edge lengths. Fails with kParallelLines when
// line(x1,x2) and line(x3,x4) are parallel and the closest-point pair is not
// unique.
Result<CongruenceRatios> compute_ratios(const std::array<Vec3, 4>& points);

// Coefficients of || (p_i + s_i u_i) - (p_j + s_j u_j) ||^2 over the
// monomial basis, for the 0-based ray indices i != j.
ConstraintRow beta_coefficients(int i, int j, const std::array<Ray, 4>& rays);

// The two constraints stating that the segment between the closest points of
// the two unknown-point lines is orthogonal to both lines.
std::array<ConstraintRow, 2> orthogonality_rows(const std::array<Ray, 4>& rays,
                                                const CongruenceRatios& ratios);

// Constraint d(first)^2 - K * d(second)^2 = 0 on the unknown points, where K
// is the matching squared-distance ratio of the known points. Only pairs with
// first == e12 and second != e12 are part of the solved system; anything else
// fails with kUnknownPair.
Result<ConstraintRow> distance_ratio_row(Edge first, Edge second,
                                         const std::array<Ray, 4>& rays,
                                         const CongruenceRatios& ratios);

// For coplanar points the closest-point constraint becomes an intersection
// constraint that is linear in the depths:
//   coeffs * (s1, s2, s3)^T = rhs_const + s4 * rhs_s4.
struct CoplanarLinearSystem {
  Mat3 coeffs = Mat3::Zero();
  Vec3 rhs_const = Vec3::Zero();
  Vec3 rhs_s4 = Vec3::Zero();
};

CoplanarLinearSystem coplanar_linear_system(const std::array<Ray, 4>& rays,
                                            const CongruenceRatios& ratios);

}  // namespace gpas
