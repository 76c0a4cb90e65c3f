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

#ifndef SIEVESTREAM_RANDOM_H_
#define SIEVESTREAM_RANDOM_H_

#include <cstdint>

namespace sievestream {

// Splitmix64 mixing step. Used both as the generator core and to derive
// independent stream seeds from (seed, tag, index) tuples.
inline std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t x = SplitMix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
  return SplitMix64(s);
}

inline std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) {
  return MixSeed(MixSeed(a, b), c);
}

// Counter-based PRNG. The sieve derives a fresh stream for every
// (seed, arrival, sample) tuple, so construction must be O(1); <random>
// engines are too heavy for that. Deterministic across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() { return SplitMix64(state_); }

  // Uniform in [0, 1), 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n), n > 0. Lemire multiply-shift; the bias of
  // n / 2^64 is irrelevant at the n values used here.
  int UniformInt(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(Next()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sievestream

#endif  // SIEVESTREAM_RANDOM_H_
