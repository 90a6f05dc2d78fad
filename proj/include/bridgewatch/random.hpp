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

#ifndef BRIDGEWATCH_RANDOM_HPP_
#define BRIDGEWATCH_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace bridgewatch {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for substream `stream` of `master`. Substreams are addressed by a
// fixed counter (tree index, channel index, ...), never by scheduling order.
constexpr uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  return Mix64(Mix64(master) ^ Mix64(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_RANDOM_HPP_
