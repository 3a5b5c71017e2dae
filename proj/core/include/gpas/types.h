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
#include <vector>

#include "gpas/result.h"

namespace gpas {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A ray in the generalized camera (rig) frame. The direction is unit length.
struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();

  Vec3 point_at(double depth) const { return origin + depth * direction; }
};

// y = scale * rotation * x + translation, with scale > 0 and rotation a
// proper rotation matrix.
struct SimilarityTransform {
  double scale = 1.0;
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return scale * (rotation * x) + translation; }
  SimilarityTransform inverse() const;
};

// Composition: result.apply(x) == outer.apply(inner.apply(x)).
SimilarityTransform compose(const SimilarityTransform& outer,
                            const SimilarityTransform& inner);

bool is_rotation_matrix(const Mat3& m, double tol = 1e-9);

// y = linear * x + translation with an arbitrary invertible linear part.
struct AffineTransform {
  Mat3 linear = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return linear * x + translation; }
};

// Pinhole camera rigidly mounted inside a generalized camera. `orientation`
// rotates camera coordinates into the rig frame; `center` is the pinhole
// position in the rig frame. Pixels are continuous coordinates.
struct PinholeCamera {
  Vec3 center = Vec3::Zero();
  Mat3 orientation = Mat3::Identity();
  double focal_length = 1000.0;
  int image_width = 1000;
  int image_height = 1000;
  Vec2 principal_point = Vec2(500.0, 500.0);
};

// Viewing ray of a pixel, expressed in the rig frame.
Ray backproject(const PinholeCamera& camera, const Vec2& pixel);

// Projects a rig-frame point. Fails with kBehindCamera when the point is at
// or behind the principal plane.
Result<Vec2> project(const PinholeCamera& camera, const Vec3& point);

bool pixel_in_image(const PinholeCamera& camera, const Vec2& pixel);

struct GeneralizedCamera {
  std::vector<PinholeCamera> cameras;
};

// One 3D-point-to-ray correspondence. The ray is derived from `pixel`
// through the indexed camera and cached here for the solvers.
struct Correspondence {
  Vec3 world_point = Vec3::Zero();
  Ray ray;
  int camera_index = 0;
  Vec2 pixel = Vec2::Zero();
};

Correspondence make_correspondence(const GeneralizedCamera& rig,
                                   int camera_index, const Vec3& world_point,
                                   const Vec2& pixel);

}  // namespace gpas
