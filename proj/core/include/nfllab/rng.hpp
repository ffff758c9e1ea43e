// Copyright 2026 The nfl-lab Authors
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

#ifndef NFLLAB_RNG_HPP
#define NFLLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace nfllab {

// Generator identifier recorded in every experiment report so results stay
// bit-reproducible across platforms and builds.
inline constexpr const char* kGeneratorName = "splitmix64-v1";

// SplitMix64 (Steele, Lea, Flood 2014). Small, fast, and splittable: any
// (seed, stream) pair derives an independent deterministic stream, which lets
// search algorithms be pure functions of (trace, seed).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unit-rate exponential draw; never returns inf because next_double() < 1.
  double next_exponential() { return -std::log1p(-next_double()); }

 private:
  std::uint64_t state_;
};

// Derives the state for an independent stream from a base seed.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return g.next();
}

}  // namespace nfllab

#endif  // NFLLAB_RNG_HPP
