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

#include "gpas/coplanar_solver.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace gpas {

namespace {

constexpr double kSingularDetTol = 1e-12;
constexpr double kQuadraticDegenerateTol = 1e-14;
constexpr double kDiscriminantTol = 1e-12;
constexpr double kPositivitySlack = 1e-9;

// Residual of one candidate on the normalized coplanar constraints: the
// three intersection rows and the (e12, e13) distance-ratio row.
double coplanar_residual(const CoplanarLinearSystem& system,
                         const ConstraintRow& ratio_row,
                         const Eigen::Vector4d& s) {
  double residual = 0.0;
  for (int row = 0; row < 3; ++row) {
    const double lhs = system.coeffs.row(row).dot(s.head<3>());
    const double rhs = system.rhs_const(row) + s(3) * system.rhs_s4(row);
    double scale = std::max(system.coeffs.row(row).cwiseAbs().maxCoeff(),
                            std::max(std::abs(system.rhs_const(row)),
                                     std::abs(system.rhs_s4(row))));
    if (scale <= 0.0) {
      scale = 1.0;
    }
    residual = std::max(residual, std::abs(lhs - rhs) / scale);
  }
  const double row_scale = ratio_row.cwiseAbs().maxCoeff();
  if (row_scale > 0.0) {
    residual = std::max(
        residual,
        std::abs(ratio_row.dot(evaluate_monomials<double>(s))) / row_scale);
  }
  return residual;
}

}  // namespace

Result<CoplanarReduction> reduce(const std::array<Ray, 4>& rays,
                                 const CongruenceRatios& ratios) {
  const CoplanarLinearSystem system = coplanar_linear_system(rays, ratios);

  // Normalize each equation before thresholding the determinant so the test
  // does not depend on the overall scene scale.
  Mat3 m = system.coeffs;
  Vec3 d0 = system.rhs_const;
  Vec3 d1 = system.rhs_s4;
  for (int row = 0; row < 3; ++row) {
    const double scale =
        std::max(m.row(row).cwiseAbs().maxCoeff(),
                 std::max(std::abs(d0(row)), std::abs(d1(row))));
    if (scale > 0.0) {
      m.row(row) /= scale;
      d0(row) /= scale;
      d1(row) /= scale;
    }
  }

  const Vec3 a = m.col(0);
  const Vec3 b = m.col(1);
  const Vec3 c = m.col(2);
  const std::array<Vec3, 3> cofactors = {b.cross(c), c.cross(a), a.cross(b)};
  const double det = a.dot(cofactors[0]);
  if (std::abs(det) <= kSingularDetTol) {
    return Error::kSingularConfiguration;
  }

  CoplanarReduction reduction;
  for (int k = 0; k < 3; ++k) {
    reduction.g(k) = d1.dot(cofactors[k]) / det;
    reduction.h(k) = d0.dot(cofactors[k]) / det;
  }
  return reduction;
}

QuadraticCoefficients quadratic_coefficients(const CoplanarReduction& reduction,
                                             const std::array<Ray, 4>& rays,
                                             double k1213) {
  const Vec3& u1 = rays[0].direction;
  const Vec3& u2 = rays[1].direction;
  const Vec3& u3 = rays[2].direction;
  const Vec3 p12 = rays[0].origin - rays[1].origin;
  const Vec3 p13 = rays[0].origin - rays[2].origin;

  // d(y1,y2)^2 - k1213 * d(y1,y3)^2 expanded over (s1, s2, s3).
  const double c1 = 1.0 - k1213;
  const double c2 = 1.0;
  const double c3 = -k1213;
  const double c4 = -2.0 * u1.dot(u2);
  const double c5 = 2.0 * k1213 * u1.dot(u3);
  const double c6 = 2.0 * (u1.dot(p12) - k1213 * u1.dot(p13));
  const double c7 = -2.0 * u2.dot(p12);
  const double c8 = 2.0 * k1213 * u3.dot(p13);
  const double c9 = p12.dot(p12) - k1213 * p13.dot(p13);

  const Vec3& g = reduction.g;
  const Vec3& h = reduction.h;
  QuadraticCoefficients q;
  q.a = c1 * g(0) * g(0) + c2 * g(1) * g(1) + c3 * g(2) * g(2) +
        c4 * g(0) * g(1) + c5 * g(0) * g(2);
  q.b = 2.0 * (c1 * g(0) * h(0) + c2 * g(1) * h(1) + c3 * g(2) * h(2)) +
        c4 * (g(0) * h(1) + g(1) * h(0)) + c5 * (g(0) * h(2) + g(2) * h(0)) +
        c6 * g(0) + c7 * g(1) + c8 * g(2);
  q.c = c1 * h(0) * h(0) + c2 * h(1) * h(1) + c3 * h(2) * h(2) +
        c4 * h(0) * h(1) + c5 * h(0) * h(2) + c6 * h(0) + c7 * h(1) +
        c8 * h(2) + c9;
  return q;
}

Result<SolutionSet> solve_coplanar(const std::array<Ray, 4>& rays,
                                   const std::array<Vec3, 4>& points) {
  const Result<CongruenceRatios> ratios = compute_ratios(points);
  if (!ratios.ok()) {
    return ratios.error();
  }
  const Result<CoplanarReduction> reduction = reduce(rays, *ratios);
  if (!reduction.ok()) {
    return reduction.error();
  }
  const double k1213 = ratios->ratio(Edge::e12, Edge::e13);
  const QuadraticCoefficients q =
      quadratic_coefficients(*reduction, rays, k1213);

  const double magnitude =
      std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
  if (magnitude <= 0.0) {
    return Error::kSingularConfiguration;
  }

  double roots[2];
  int num_roots = 0;
  if (std::abs(q.a) <= kQuadraticDegenerateTol * magnitude) {
    if (std::abs(q.b) <= kQuadraticDegenerateTol * magnitude) {
      return Error::kNoRealRoot;
    }
    roots[num_roots++] = -q.c / q.b;
  } else {
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    const double disc_tol = kDiscriminantTol * q.b * q.b;
    if (disc < -disc_tol) {
      return Error::kNoRealRoot;
    }
    if (disc <= disc_tol) {
      roots[num_roots++] = -q.b / (2.0 * q.a);
    } else {
      const double sqrt_disc = std::sqrt(std::max(disc, 0.0));
      const double w =
          -0.5 * (q.b + (q.b >= 0.0 ? sqrt_disc : -sqrt_disc));
      roots[num_roots++] = w / q.a;
      if (w != 0.0) {
        roots[num_roots++] = q.c / w;
      } else {
        roots[num_roots++] = 0.0;
      }
    }
  }

  const CoplanarLinearSystem system = coplanar_linear_system(rays, *ratios);
  const Result<ConstraintRow> ratio_row =
      distance_ratio_row(Edge::e12, Edge::e13, rays, *ratios);

  SolutionSet solutions;
  for (int i = 0; i < num_roots; ++i) {
    const double s4 = roots[i];
    Eigen::Vector4d s;
    s.head<3>() = reduction->g * s4 + reduction->h;
    s(3) = s4;
    if (s.minCoeff() < -kPositivitySlack) {
      continue;
    }
    Solution solution;
    solution.values = s.cwiseMax(0.0);
    solution.residual = coplanar_residual(system, *ratio_row, solution.values);
    bool duplicate = false;
    for (const Solution& existing : solutions) {
      if ((existing.values - solution.values).cwiseAbs().maxCoeff() <=
          1e-7 * (1.0 + solution.values.cwiseAbs().maxCoeff())) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      solutions.push_back(solution);
    }
  }

  std::sort(solutions.begin(), solutions.end(),
            [](const Solution& a, const Solution& b) {
              for (int i = 0; i < 4; ++i) {
                if (a.values(i) != b.values(i)) {
                  return a.values(i) < b.values(i);
                }
              }
              return false;
            });
  return solutions;
}

}  // namespace gpas
