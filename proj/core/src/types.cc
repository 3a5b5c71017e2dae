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

#include "gpas/types.h"

#include <Eigen/Dense>

namespace gpas {

const char* error_name(Error error) {
  switch (error) {
    case Error::kDegenerateInput:
      return "DegenerateInput";
    case Error::kParallelLines:
      return "ParallelLines";
    case Error::kBehindCamera:
      return "BehindCamera";
    case Error::kUnknownPair:
      return "UnknownPair";
    case Error::kSingularConfiguration:
      return "SingularConfiguration";
    case Error::kNoRealRoot:
      return "NoRealRoot";
    case Error::kSolverFailure:
      return "SolverFailure";
    case Error::kDegenerateConfiguration:
      return "DegenerateConfiguration";
    case Error::kNoHypothesis:
      return "NoHypothesis";
    case Error::kEstimationFailure:
      return "EstimationFailure";
    case Error::kInvalidInput:
      return "InvalidInput";
  }
  return "Unknown";
}

SimilarityTransform SimilarityTransform::inverse() const {
  SimilarityTransform inv;
  inv.scale = 1.0 / scale;
  inv.rotation = rotation.transpose();
  inv.translation = -inv.scale * (inv.rotation * translation);
  return inv;
}

SimilarityTransform compose(const SimilarityTransform& outer,
                            const SimilarityTransform& inner) {
  SimilarityTransform out;
  out.scale = outer.scale * inner.scale;
  out.rotation = outer.rotation * inner.rotation;
  out.translation = outer.scale * (outer.rotation * inner.translation) +
                    outer.translation;
  return out;
}

bool is_rotation_matrix(const Mat3& m, double tol) {
  return (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         m.determinant() > 0.0;
}

Ray backproject(const PinholeCamera& camera, const Vec2& pixel) {
  const Vec2 centered = pixel - camera.principal_point;
  Vec3 dir_cam(centered.x() / camera.focal_length,
               centered.y() / camera.focal_length, 1.0);
  Ray ray;
  ray.origin = camera.center;
  ray.direction = (camera.orientation * dir_cam).normalized();
  return ray;
}

Result<Vec2> project(const PinholeCamera& camera, const Vec3& point) {
  const Vec3 in_cam = camera.orientation.transpose() * (point - camera.center);
  if (in_cam.z() <= 0.0) {
    return Error::kBehindCamera;
  }
  return Vec2(camera.focal_length * in_cam.x() / in_cam.z() +
                  camera.principal_point.x(),
              camera.focal_length * in_cam.y() / in_cam.z() +
                  camera.principal_point.y());
}

bool pixel_in_image(const PinholeCamera& camera, const Vec2& pixel) {
  return pixel.x() >= 0.0 && pixel.x() <= camera.image_width &&
         pixel.y() >= 0.0 && pixel.y() <= camera.image_height;
}

Correspondence make_correspondence(const GeneralizedCamera& rig,
                                   int camera_index, const Vec3& world_point,
                                   const Vec2& pixel) {
  Correspondence c;
  c.world_point = world_point;
  c.camera_index = camera_index;
  c.pixel = pixel;
  c.ray = backproject(rig.cameras[camera_index], pixel);
  return c;
}

}  // namespace gpas
