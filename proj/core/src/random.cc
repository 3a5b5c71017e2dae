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

#include "gpas/random.h"

#include <Eigen/Geometry>

namespace gpas {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t state = base;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (index * 0xD6E8FEB86659FD93ULL + 0xA5A5A5A5A5A5A5A5ULL);
  mixed = splitmix64(state);
  return splitmix64(state) ^ mixed;
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  while (q.norm() < 1e-6) {
    q = Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  }
  q.normalize();
  return q.toRotationMatrix();
}

Vec3 uniform_in_box(std::mt19937_64& rng, const Vec3& lo, const Vec3& hi) {
  Vec3 p;
  for (int i = 0; i < 3; ++i) {
    std::uniform_real_distribution<double> dist(lo[i], hi[i]);
    p[i] = dist(rng);
  }
  return p;
}

}  // namespace gpas
