// Copyright 2026 The rcgnn Authors
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

#ifndef RCGNN_RNG_H_
#define RCGNN_RNG_H_

#include <cstdint>
#include <random>

namespace rcgnn {

using Rng = std::mt19937_64;

// Named random streams. Each subsystem draws from its own stream so that
// changing one consumer never shifts the numbers another one sees.
enum class Stream : uint64_t {
  kDataset = 1,
  kSplit = 2,
  kInit = 3,
  kShuffle = 4,
  kPermute = 5,
  kRandomExplainer = 6,
  kGradCheck = 7,
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based expansion of one top-level seed into independent sub-seeds.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t counter = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + counter);
}

inline uint64_t derive_seed(uint64_t seed, Stream stream, uint64_t counter = 0) {
  return derive_seed(seed, static_cast<uint64_t>(stream), counter);
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; platform independent.
inline uint64_t uniform_index(Rng& rng, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace rcgnn

#endif  // RCGNN_RNG_H_
