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

#include <Eigen/Dense>

namespace gpas {

namespace {

constexpr double kCollinearEigenRatio = 1e-12;

// Empty weights mean uniform. Returns false on a malformed weight vector.
bool check_weights(std::span<const PointPair> pairs,
                   std::span<const double> weights) {
  if (weights.empty()) {
    return true;
  }
  if (weights.size() != pairs.size()) {
    return false;
  }
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      return false;
    }
  }
  return true;
}

double weight_at(std::span<const double> weights, int i) {
  return weights.empty() ? 1.0 : weights[i];
}

}  // namespace

Result<SimilarityTransform> umeyama_similarity(
    std::span<const PointPair> pairs) {
  return umeyama_similarity(pairs, {});
}

Result<SimilarityTransform> umeyama_similarity(
    std::span<const PointPair> pairs, std::span<const double> weights) {
  const int n = static_cast<int>(pairs.size());
  if (n < 3) {
    return Error::kDegenerateConfiguration;
  }
  if (!check_weights(pairs, weights)) {
    return Error::kInvalidInput;
  }

  double total_weight = 0.0;
  Vec3 mean_src = Vec3::Zero();
  Vec3 mean_dst = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    const double w = weight_at(weights, i);
    total_weight += w;
    mean_src += w * pairs[i].source;
    mean_dst += w * pairs[i].target;
  }
  if (!(total_weight > 0.0)) {
    return Error::kDegenerateConfiguration;
  }
  mean_src /= total_weight;
  mean_dst /= total_weight;

  double src_variance = 0.0;
  Mat3 cross_cov = Mat3::Zero();
  Mat3 src_cov = Mat3::Zero();
  for (int i = 0; i < n; ++i) {
    const double w = weight_at(weights, i);
    const Vec3 ds = pairs[i].source - mean_src;
    const Vec3 dt = pairs[i].target - mean_dst;
    src_variance += w * ds.squaredNorm();
    cross_cov += w * (dt * ds.transpose());
    src_cov += w * (ds * ds.transpose());
  }
  src_variance /= total_weight;
  cross_cov /= total_weight;
  src_cov /= total_weight;

  Eigen::SelfAdjointEigenSolver<Mat3> src_eigen(src_cov);
  const Vec3 eigenvalues = src_eigen.eigenvalues();  // ascending
  if (eigenvalues(2) <= 0.0 ||
      eigenvalues(1) <= kCollinearEigenRatio * eigenvalues(2)) {
    return Error::kDegenerateConfiguration;
  }

  Eigen::JacobiSVD<Mat3> svd(cross_cov,
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec3 sign_correction = Vec3::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
    sign_correction(2) = -1.0;
  }

  SimilarityTransform transform;
  transform.rotation = svd.matrixU() * sign_correction.asDiagonal() *
                       svd.matrixV().transpose();
  transform.scale = svd.singularValues().dot(sign_correction) / src_variance;
  if (!(transform.scale > 0.0)) {
    return Error::kDegenerateConfiguration;
  }
  transform.translation =
      mean_dst - transform.scale * (transform.rotation * mean_src);
  return transform;
}

Result<AffineTransform> affine_fit(std::span<const PointPair> pairs) {
  return affine_fit(pairs, {});
}

Result<AffineTransform> affine_fit(std::span<const PointPair> pairs,
                                   std::span<const double> weights) {
  const int n = static_cast<int>(pairs.size());
  if (n < 4) {
    return Error::kDegenerateConfiguration;
  }
  if (!check_weights(pairs, weights)) {
    return Error::kInvalidInput;
  }

  Eigen::MatrixXd design(n, 4);
  Eigen::MatrixXd targets(n, 3);
  for (int i = 0; i < n; ++i) {
    // Scaling both sides by sqrt(w) turns the plain normal equations into
    // the weighted ones.
    const double root = std::sqrt(weight_at(weights, i));
    design.row(i) << root * pairs[i].source.transpose(), root;
    targets.row(i) = root * pairs[i].target.transpose();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 4) {
    return Error::kDegenerateConfiguration;
  }
  const Eigen::Matrix<double, 4, 3> coeffs = qr.solve(targets);

  AffineTransform transform;
  transform.linear = coeffs.topRows<3>().transpose();
  transform.translation = coeffs.row(3).transpose();
  return transform;
}

Result<SimilarityTransform> similarity_from_affine_inliers(
    std::span<const PointPair> pairs) {
  return umeyama_similarity(pairs, {});
}

Result<SimilarityTransform> similarity_from_affine_inliers(
    std::span<const PointPair> pairs, std::span<const double> weights) {
  return umeyama_similarity(pairs, weights);
}

}  // namespace gpas
