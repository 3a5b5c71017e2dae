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

#include "gpas/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "gpas/random.h"
#include "gpas/robust_estimator.h"

namespace gpas {

namespace {

Mat3 look_at_orientation(const Vec3& center, const Vec3& target, double roll) {
  Vec3 z = target - center;
  if (z.norm() < 1e-9) {
    z = Vec3::UnitZ();
  } else {
    z.normalize();
  }
  const Vec3 ref =
      std::abs(z.dot(Vec3::UnitX())) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 x0 = (ref - ref.dot(z) * z).normalized();
  const Vec3 y0 = z.cross(x0);
  const Vec3 x = std::cos(roll) * x0 + std::sin(roll) * y0;
  Mat3 orientation;
  orientation.col(0) = x;
  orientation.col(1) = z.cross(x);
  orientation.col(2) = z;
  return orientation;
}

struct PlanePose {
  Mat3 rotation = Mat3::Identity();
  Vec3 offset = Vec3::Zero();
};

Vec3 sample_point(std::mt19937_64& rng, const SceneRecipe& recipe,
                  const PlanePose& plane) {
  if (!recipe.coplanar) {
    return uniform_in_box(rng, recipe.point_cube.lo, recipe.point_cube.hi);
  }
  std::uniform_real_distribution<double> x_dist(recipe.point_cube.lo.x(),
                                                recipe.point_cube.hi.x());
  std::uniform_real_distribution<double> y_dist(recipe.point_cube.lo.y(),
                                                recipe.point_cube.hi.y());
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Vec3 local(x_dist(rng), y_dist(rng), 0.0);
    const Vec3 p = plane.rotation * local + plane.offset;
    if ((p.array() >= recipe.point_cube.lo.array()).all() &&
        (p.array() <= recipe.point_cube.hi.array()).all()) {
      return p;
    }
  }
  return plane.offset;  // plane anchor is always inside the cube
}

}  // namespace

int SyntheticProblem::true_inlier_count() const {
  return static_cast<int>(
      std::count(inlier_mask.begin(), inlier_mask.end(), true));
}

SimilarityTransform random_similarity(std::mt19937_64& rng) {
  SimilarityTransform t;
  t.rotation = random_rotation(rng);
  std::uniform_real_distribution<double> log_scale(std::log(0.5),
                                                   std::log(2.0));
  t.scale = std::exp(log_scale(rng));
  t.translation =
      uniform_in_box(rng, Vec3(-5.0, -5.0, -5.0), Vec3(5.0, 5.0, 5.0));
  return t;
}

SyntheticProblem generate(const SceneRecipe& recipe) {
  std::mt19937_64 rng(recipe.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PlanePose plane;
  if (recipe.coplanar) {
    plane.rotation = random_rotation(rng);
    // Anchor well inside the cube so the plane-cube intersection is roomy.
    const Vec3 mid = 0.5 * (recipe.point_cube.lo + recipe.point_cube.hi);
    const Vec3 half = 0.25 * (recipe.point_cube.hi - recipe.point_cube.lo);
    plane.offset = uniform_in_box(rng, mid - half, mid + half);
  }

  std::vector<Vec3> scene_points(recipe.num_points);
  for (Vec3& p : scene_points) {
    p = sample_point(rng, recipe, plane);
  }
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : scene_points) {
    centroid += p;
  }
  centroid /= std::max(recipe.num_points, 1);

  SyntheticProblem problem;
  problem.rig.cameras.resize(recipe.num_cameras);
  for (PinholeCamera& camera : problem.rig.cameras) {
    camera.center = uniform_in_box(rng, recipe.camera_box.lo,
                                   recipe.camera_box.hi);
    camera.orientation =
        look_at_orientation(camera.center, centroid, 2.0 * M_PI * unit(rng));
    camera.focal_length = recipe.focal_length;
    camera.image_width = recipe.image_width;
    camera.image_height = recipe.image_height;
    camera.principal_point =
        Vec2(0.5 * recipe.image_width, 0.5 * recipe.image_height);
  }

  std::uniform_int_distribution<int> camera_dist(0, recipe.num_cameras - 1);
  std::vector<int> camera_of(recipe.num_points);
  std::vector<Vec2> clean_pixels(recipe.num_points);
  for (int i = 0; i < recipe.num_points; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const int cam = camera_dist(rng);
      const Result<Vec2> projected =
          project(problem.rig.cameras[cam], scene_points[i]);
      if (projected.ok() &&
          pixel_in_image(problem.rig.cameras[cam], *projected)) {
        camera_of[i] = cam;
        clean_pixels[i] = *projected;
        placed = true;
        break;
      }
      scene_points[i] = sample_point(rng, recipe, plane);
    }
    if (!placed) {
      // Fall back to whatever the last draw produced; extremely unlikely
      // with sane recipes.
      camera_of[i] = 0;
      const Result<Vec2> projected =
          project(problem.rig.cameras[0], scene_points[i]);
      clean_pixels[i] = projected.ok()
                            ? *projected
                            : problem.rig.cameras[0].principal_point;
    }
  }

  std::vector<Vec2> pixels = clean_pixels;
  if (recipe.noise_sigma_px > 0.0) {
    for (Vec2& pixel : pixels) {
      pixel.x() += recipe.noise_sigma_px * gauss(rng);
      pixel.y() += recipe.noise_sigma_px * gauss(rng);
    }
  }

  problem.inlier_mask.assign(recipe.num_points, true);
  const int num_outliers = static_cast<int>(
      std::lround(recipe.outlier_fraction * recipe.num_points));
  if (num_outliers > 0) {
    std::vector<int> order(recipe.num_points);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < num_outliers; ++k) {
      const int i = order[k];
      std::uniform_real_distribution<double> px(0.0, recipe.image_width);
      std::uniform_real_distribution<double> py(0.0, recipe.image_height);
      pixels[i] = Vec2(px(rng), py(rng));
      problem.inlier_mask[i] = false;
    }
  }

  problem.ground_truth = SimilarityTransform{};
  if (recipe.transform == SceneRecipe::Transform::kRandomSimilarity) {
    problem.ground_truth = random_similarity(rng);
  }
  const SimilarityTransform to_world = problem.ground_truth.inverse();

  problem.correspondences.reserve(recipe.num_points);
  problem.ground_truth_depths.resize(recipe.num_points);
  for (int i = 0; i < recipe.num_points; ++i) {
    problem.correspondences.push_back(make_correspondence(
        problem.rig, camera_of[i], to_world.apply(scene_points[i]),
        pixels[i]));
    problem.ground_truth_depths[i] =
        (scene_points[i] - problem.rig.cameras[camera_of[i]].center).norm();
  }
  return problem;
}

double rotation_angle_deg(const Mat3& rotation) {
  const double cos_angle = 0.5 * (rotation.trace() - 1.0);
  const Vec3 skew(rotation(2, 1) - rotation(1, 2),
                  rotation(0, 2) - rotation(2, 0),
                  rotation(1, 0) - rotation(0, 1));
  const double sin_angle = 0.5 * skew.norm();
  return std::atan2(sin_angle, cos_angle) * 180.0 / M_PI;
}

ErrorReport error_report(const SimilarityTransform& estimate,
                         const SimilarityTransform& truth,
                         const SyntheticProblem& problem,
                         double inlier_threshold_px) {
  ErrorReport report;
  report.rotation_error_deg =
      rotation_angle_deg(estimate.rotation * truth.rotation.transpose());
  report.translation_error = (estimate.translation - truth.translation).norm();
  report.translation_error_rel =
      report.translation_error / std::max(truth.translation.norm(), 1e-9);
  report.scale_error_rel = std::abs(estimate.scale - truth.scale) / truth.scale;

  double error_sum = 0.0;
  double depth_sq_sum = 0.0;
  int true_inliers = 0;
  for (size_t i = 0; i < problem.correspondences.size(); ++i) {
    if (!problem.inlier_mask[i]) {
      continue;
    }
    ++true_inliers;
    const Correspondence& c = problem.correspondences[i];
    const double err = reprojection_error(estimate, c, problem.rig);
    error_sum += err;
    if (err < inlier_threshold_px) {
      ++report.inlier_count;
    }
    const Vec3 mapped = estimate.apply(c.world_point);
    const double induced_depth = c.ray.direction.dot(mapped - c.ray.origin);
    const double depth_delta =
        induced_depth - problem.ground_truth_depths[i];
    depth_sq_sum += depth_delta * depth_delta;
  }
  if (true_inliers > 0) {
    report.mean_reprojection_error_px = error_sum / true_inliers;
    report.depth_rmse = std::sqrt(depth_sq_sum / true_inliers);
  }
  return report;
}

}  // namespace gpas
