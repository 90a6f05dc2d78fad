/*
 * Copyright 2026 The bridgewatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BRIDGEWATCH_PARALLEL_HPP_
#define BRIDGEWATCH_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bridgewatch {

// n_jobs <= 0 means "all hardware threads".
inline size_t ResolveJobs(int n_jobs) {
  if (n_jobs > 0) return static_cast<size_t>(n_jobs);
  return std::max<size_t>(1, std::thread::hardware_concurrency());
}

// Calls fn(begin, end) over contiguous chunks of [0, n). Work items must be
// independent; the first exception thrown by any chunk is rethrown.
template <typename Fn>
void ParallelFor(size_t n, int n_jobs, Fn&& fn) {
  const size_t jobs = std::min(ResolveJobs(n_jobs), std::max<size_t>(n, 1));
  if (jobs <= 1) {
    fn(size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  const size_t chunk = (n + jobs - 1) / jobs;
  for (size_t j = 0; j < jobs; ++j) {
    const size_t begin = std::min(n, j * chunk);
    const size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&, j, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_PARALLEL_HPP_
