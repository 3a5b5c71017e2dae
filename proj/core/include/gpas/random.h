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

#include <cstdint>
#include <random>

#include "gpas/types.h"

namespace gpas {

// Derives an independent stream seed from a base seed and an index. Used to
// give every trial/iteration its own generator so results do not depend on
// execution order or thread count.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Rotation drawn uniformly from SO(3) (via a uniform unit quaternion).
Mat3 random_rotation(std::mt19937_64& rng);

Vec3 uniform_in_box(std::mt19937_64& rng, const Vec3& lo, const Vec3& hi);

}  // namespace gpas
