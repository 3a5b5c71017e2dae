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

#include <Eigen/Core>
#include <cassert>

namespace gpas {

// Every quadratic constraint in the unknown depths s = (s1, s2, s3, s4) is
// stored as a coefficient vector over this fixed monomial basis:
//
//   [s1^2, s2^2, s3^2, s4^2,
//    s1*s2, s1*s3, s1*s4, s2*s3, s2*s4, s3*s4,
//    s1, s2, s3, s4, 1]
//
// The ordering is part of the contract between the constraint builders and
// the solvers; do not reorder.
inline constexpr int kNumMonomials = 15;

using ConstraintRow = Eigen::Matrix<double, kNumMonomials, 1>;

// Index of s_i^2 for 0-based variable index i.
constexpr int square_monomial_index(int i) { return i; }

// Index of s_i * s_j for 0-based i != j.
constexpr int pair_monomial_index(int i, int j) {
  if (i > j) {
    const int tmp = i;
    i = j;
    j = tmp;
  }
  // (0,1)->4 (0,2)->5 (0,3)->6 (1,2)->7 (1,3)->8 (2,3)->9
  constexpr int table[4][4] = {{-1, 4, 5, 6},
                               {4, -1, 7, 8},
                               {5, 7, -1, 9},
                               {6, 8, 9, -1}};
  return table[i][j];
}

// Index of s_i for 0-based variable index i.
constexpr int linear_monomial_index(int i) { return 10 + i; }

inline constexpr int kConstantMonomialIndex = 14;

// Evaluates the basis at s. The dot product of a ConstraintRow with this
// vector is the constraint value.
template <typename Scalar>
Eigen::Matrix<Scalar, kNumMonomials, 1> evaluate_monomials(
    const Eigen::Matrix<Scalar, 4, 1>& s) {
  Eigen::Matrix<Scalar, kNumMonomials, 1> m;
  m(0) = s(0) * s(0);
  m(1) = s(1) * s(1);
  m(2) = s(2) * s(2);
  m(3) = s(3) * s(3);
  m(4) = s(0) * s(1);
  m(5) = s(0) * s(2);
  m(6) = s(0) * s(3);
  m(7) = s(1) * s(2);
  m(8) = s(1) * s(3);
  m(9) = s(2) * s(3);
  m(10) = s(0);
  m(11) = s(1);
  m(12) = s(2);
  m(13) = s(3);
  m(14) = Scalar(1);
  return m;
}

}  // namespace gpas
