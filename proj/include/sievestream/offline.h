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

//
// Offline solvers used to extract a solution from a stored support:
// exhaustive search (exact) and Random Greedy (polynomial time).

#ifndef SIEVESTREAM_OFFLINE_H_
#define SIEVESTREAM_OFFLINE_H_

#include <cstdint>

#include "sievestream/random.h"
#include "sievestream/submodular_function.h"

namespace sievestream {

// Default cap on the number of candidate sets brute force may enumerate.
inline constexpr std::uint64_t kDefaultBruteForceWorkCap = 20'000'000;

struct OfflineSolution {
  ElementSet set;  // sorted ascending
  double value = 0.0;
};

// Exact argmax of f over subsets of `ground` of size at most k. Ties break
// to the lexicographically smallest sorted id sequence, so the result is
// deterministic regardless of enumeration order. Throws CapacityError when
// sum_{i<=k} C(|ground|, i) exceeds work_cap.
OfflineSolution BruteForce(const SubmodularFunction& f,
                           const ElementSet& ground, int k,
                           std::uint64_t work_cap = kDefaultBruteForceWorkCap);

// Random Greedy: k rounds; each round ranks the remaining elements by
// marginal gain, keeps the top k positive ones padded to k slots with
// zero-gain dummies, and adds a uniformly random slot (a dummy slot adds
// nothing). Output size is at most k and f(output) >= 0 by construction.
OfflineSolution RandomGreedy(const SubmodularFunction& f,
                             const ElementSet& ground, int k, Rng& rng);

}  // namespace sievestream

#endif  // SIEVESTREAM_OFFLINE_H_
