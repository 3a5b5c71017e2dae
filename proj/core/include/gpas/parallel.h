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

#include <functional>

namespace gpas {

// Default worker count: the GPAS_THREADS environment variable when set to a
// positive integer, otherwise the hardware concurrency.
int default_thread_count();

// Runs fn(i) for i in [0, count) on up to num_threads workers. Each index is
// processed exactly once and writes only to its own slot in caller-owned
// storage, so results are identical for every thread count.
void parallel_for(int count, const std::function<void(int)>& fn,
                  int num_threads = 0);

}  // namespace gpas
