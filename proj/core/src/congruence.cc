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

#include "gpas/congruence.h"

#include <Eigen/Dense>
#include <cmath>

namespace gpas {

namespace {

constexpr double kParallelSineTol = 1e-10;

struct Frame {
  // v[k] is the coefficient of s_k in (m12 - m34); p5 is its constant part.
  std::array<Vec3, 4> v;
  Vec3 p5;
  Vec3 p6;  // p1 - p2
  Vec3 p7;  // p3 - p4
};

Frame make_frame(const std::array<Ray, 4>& rays,
                 const CongruenceRatios& ratios) {
  const double f1 = 1.0 - ratios.r1;
  const double f2 = ratios.r1;
  const double f3 = 1.0 - ratios.r2;
  const double f4 = ratios.r2;
  Frame frame;
  frame.v = {f1 * rays[0].direction, f2 * rays[1].direction,
             -f3 * rays[2].direction, -f4 * rays[3].direction};
  frame.p5 = f1 * rays[0].origin + f2 * rays[1].origin -
             f3 * rays[2].origin - f4 * rays[3].origin;
  frame.p6 = rays[0].origin - rays[1].origin;
  frame.p7 = rays[2].origin - rays[3].origin;
  return frame;
}

}  // namespace

std::pair<int, int> edge_endpoints(Edge edge) {
  switch (edge) {
    case Edge::e12:
      return {0, 1};
    case Edge::e34:
      return {2, 3};
    case Edge::e13:
      return {0, 2};
    case Edge::e14:
      return {0, 3};
    case Edge::e23:
      return {1, 2};
    case Edge::e24:
      return {1, 3};
  }
  return {0, 0};
}

Result<bool> coplanarity_test(const std::array<Vec3, 4>& points, double tol) {
  double distance_sum = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d = (points[i] - points[j]).norm();
      distance_sum += d;
      min_distance = std::min(min_distance, d);
    }
  }
  const double mean_distance = distance_sum / 6.0;
  if (mean_distance <= 0.0 || min_distance < 1e-12 * mean_distance) {
    return Error::kDegenerateInput;
  }
  const double volume =
      std::abs((points[1] - points[0])
                   .cross(points[2] - points[0])
                   .dot(points[3] - points[0]));
  const double normalized =
      volume / (mean_distance * mean_distance * mean_distance);
  return normalized <= tol;
}

Result<CongruenceRatios> compute_ratios(const std::array<Vec3, 4>& points) {
  const Vec3 v1 = points[1] - points[0];
  const Vec3 v2 = points[3] - points[2];
  const double n1 = v1.norm();
  const double n2 = v2.norm();
  if (n1 == 0.0 || n2 == 0.0) {
    return Error::kDegenerateInput;
  }
  const Vec3 cross = v1.cross(v2);
  if (cross.norm() <= kParallelSineTol * n1 * n2) {
    return Error::kParallelLines;
  }

  // Closest points m' = x1 + r1 v1 on line(x1,x2) and m'' = x3 + r2 v2 on
  // line(x3,x4) satisfy x1 + r1 v1 + w (v1 x v2) = x3 + r2 v2 for some w.
  Mat3 a;
  a.col(0) = v1;
  a.col(1) = -v2;
  a.col(2) = cross;
  const Vec3 t = a.partialPivLu().solve(points[2] - points[0]);

  CongruenceRatios ratios;
  ratios.r1 = t(0);
  ratios.r2 = t(1);
  for (int e = 0; e < kNumEdges; ++e) {
    const auto [i, j] = edge_endpoints(static_cast<Edge>(e));
    ratios.squared_edge_length[e] = (points[i] - points[j]).squaredNorm();
  }
  return ratios;
}

ConstraintRow beta_coefficients(int i, int j, const std::array<Ray, 4>& rays) {
  assert(i != j && i >= 0 && i < 4 && j >= 0 && j < 4);
  const Vec3& ui = rays[i].direction;
  const Vec3& uj = rays[j].direction;
  const Vec3 d = rays[i].origin - rays[j].origin;

  ConstraintRow row = ConstraintRow::Zero();
  row(square_monomial_index(i)) = 1.0;
  row(square_monomial_index(j)) = 1.0;
  row(pair_monomial_index(i, j)) = -2.0 * ui.dot(uj);
  row(linear_monomial_index(i)) = 2.0 * ui.dot(d);
  row(linear_monomial_index(j)) = -2.0 * uj.dot(d);
  row(kConstantMonomialIndex) = d.dot(d);
  return row;
}

std::array<ConstraintRow, 2> orthogonality_rows(
    const std::array<Ray, 4>& rays, const CongruenceRatios& ratios) {
  const Frame f = make_frame(rays, ratios);
  const Vec3& u1 = rays[0].direction;
  const Vec3& u2 = rays[1].direction;
  const Vec3& u3 = rays[2].direction;
  const Vec3& u4 = rays[3].direction;

  // (y1 - y2) . (m12 - m34) with y1 - y2 = p6 + s1 u1 - s2 u2.
  ConstraintRow row1 = ConstraintRow::Zero();
  row1(square_monomial_index(0)) = u1.dot(f.v[0]);
  row1(square_monomial_index(1)) = -u2.dot(f.v[1]);
  row1(pair_monomial_index(0, 1)) = u1.dot(f.v[1]) - u2.dot(f.v[0]);
  row1(pair_monomial_index(0, 2)) = u1.dot(f.v[2]);
  row1(pair_monomial_index(0, 3)) = u1.dot(f.v[3]);
  row1(pair_monomial_index(1, 2)) = -u2.dot(f.v[2]);
  row1(pair_monomial_index(1, 3)) = -u2.dot(f.v[3]);
  row1(linear_monomial_index(0)) = f.p6.dot(f.v[0]) + u1.dot(f.p5);
  row1(linear_monomial_index(1)) = f.p6.dot(f.v[1]) - u2.dot(f.p5);
  row1(linear_monomial_index(2)) = f.p6.dot(f.v[2]);
  row1(linear_monomial_index(3)) = f.p6.dot(f.v[3]);
  row1(kConstantMonomialIndex) = f.p6.dot(f.p5);

  // (y3 - y4) . (m12 - m34) with y3 - y4 = p7 + s3 u3 - s4 u4.
  ConstraintRow row2 = ConstraintRow::Zero();
  row2(square_monomial_index(2)) = u3.dot(f.v[2]);
  row2(square_monomial_index(3)) = -u4.dot(f.v[3]);
  row2(pair_monomial_index(2, 3)) = u3.dot(f.v[3]) - u4.dot(f.v[2]);
  row2(pair_monomial_index(0, 2)) = u3.dot(f.v[0]);
  row2(pair_monomial_index(0, 3)) = -u4.dot(f.v[0]);
  row2(pair_monomial_index(1, 2)) = u3.dot(f.v[1]);
  row2(pair_monomial_index(1, 3)) = -u4.dot(f.v[1]);
  row2(linear_monomial_index(0)) = f.p7.dot(f.v[0]);
  row2(linear_monomial_index(1)) = f.p7.dot(f.v[1]);
  row2(linear_monomial_index(2)) = f.p7.dot(f.v[2]) + u3.dot(f.p5);
  row2(linear_monomial_index(3)) = f.p7.dot(f.v[3]) - u4.dot(f.p5);
  row2(kConstantMonomialIndex) = f.p7.dot(f.p5);

  return {row1, row2};
}

Result<ConstraintRow> distance_ratio_row(Edge first, Edge second,
                                         const std::array<Ray, 4>& rays,
                                         const CongruenceRatios& ratios) {
  if (first != Edge::e12 || second == Edge::e12) {
    return Error::kUnknownPair;
  }
  const auto [i1, j1] = edge_endpoints(first);
  const auto [i2, j2] = edge_endpoints(second);
  const double k = ratios.ratio(first, second);
  ConstraintRow row = beta_coefficients(i1, j1, rays) -
                      k * beta_coefficients(i2, j2, rays);
  return row;
}

CoplanarLinearSystem coplanar_linear_system(const std::array<Ray, 4>& rays,
                                            const CongruenceRatios& ratios) {
  const Frame f = make_frame(rays, ratios);
  CoplanarLinearSystem system;
  system.coeffs.col(0) = f.v[0];
  system.coeffs.col(1) = f.v[1];
  system.coeffs.col(2) = f.v[2];
  system.rhs_const = -f.p5;
  system.rhs_s4 = -f.v[3];
  return system;
}

}  // namespace gpas
