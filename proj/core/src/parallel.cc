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

#include "gpas/parallel.h"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gpas {

int default_thread_count() {
  if (const char* env = std::getenv("GPAS_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      return parsed;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn,
                  int num_threads) {
  if (count <= 0) {
    return;
  }
  if (num_threads <= 0) {
    num_threads = default_thread_count();
  }
  if (num_threads > count) {
    num_threads = count;
  }
  if (num_threads == 1) {
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<int> next(0);
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) {
        return;
      }
      fn(i);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(num_threads - 1);
  for (int t = 1; t < num_threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& thread : pool) {
    thread.join();
  }
}

}  // namespace gpas
