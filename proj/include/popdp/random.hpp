// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded randomness. Everything in the library draws from std::mt19937_64
// through the helpers below, never through std:: distributions, so a seed
// reproduces the same stream of values on every standard library.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace popdp {

using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1].
inline double uniform01_open_closed(Rng& rng) { return 1.0 - uniform01(rng); }

// Unbiased integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for replica/stream `index` under `master`:
//   derive_seed(m, i) = mix64(mix64(m) ^ (i * 0xD1B54A32D192ED03))
// Distinct indices give statistically independent mt19937_64 streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ (index * 0xD1B54A32D192ED03ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

// Fixed stream indices used inside one run.
namespace stream {
inline constexpr std::uint64_t kEnvironment = 1;
inline constexpr std::uint64_t kMechanism = 2;
inline constexpr std::uint64_t kAgent = 3;
inline constexpr std::uint64_t kGraph = 4;
}  // namespace stream

}  // namespace popdp
