// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIEVESTREAM_PARALLEL_H_
#define SIEVESTREAM_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sievestream {

// Worker count: SIEVESTREAM_WORKERS environment variable if set, otherwise
// the hardware concurrency (at least 1).
int DefaultWorkerCount();

// Runs fn(0..n-1), fanning out over `workers` threads (0 = default count).
// Results must be written to per-index slots by the caller; iteration order
// is unspecified but every index runs exactly once. The first exception
// thrown by any worker is rethrown after all workers finish.
inline void ParallelFor(std::int64_t n, int workers,
                        const std::function<void(std::int64_t)>& fn) {
  if (workers <= 0) workers = DefaultWorkerCount();
  if (workers <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int count = static_cast<int>(std::min<std::int64_t>(workers, n));
  threads.reserve(count);
  for (int t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sievestream

#endif  // SIEVESTREAM_PARALLEL_H_
