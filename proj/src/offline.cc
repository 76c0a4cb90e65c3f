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

#include "sievestream/offline.h"

#include <algorithm>
#include <stdexcept>

#include "sievestream/errors.h"

namespace sievestream {

namespace {

// sum_{i=0}^{k} C(n, i), saturating.
std::uint64_t SubsetWorkEstimate(int n, int k) {
  const std::uint64_t kCap = ~std::uint64_t{0};
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, 0)
  for (int i = 0; i <= std::min(k, n); ++i) {
    if (kCap - total < binom) return kCap;
    total += binom;
    if (i < n) {
      // C(n, i+1) = C(n, i) * (n - i) / (i + 1); watch for overflow.
      if (binom > kCap / static_cast<std::uint64_t>(n - i)) return kCap;
      binom = binom * static_cast<std::uint64_t>(n - i) /
              static_cast<std::uint64_t>(i + 1);
    }
  }
  return total;
}

bool LexSmaller(const ElementSet& a, const ElementSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

OfflineSolution BruteForce(const SubmodularFunction& f,
                           const ElementSet& ground, int k,
                           std::uint64_t work_cap) {
  if (k < 0) throw std::invalid_argument("cardinality bound must be >= 0");
  ElementSet ids = ground;
  std::sort(ids.begin(), ids.end());
  const int n = static_cast<int>(ids.size());
  std::uint64_t work = SubsetWorkEstimate(n, k);
  if (work > work_cap) {
    throw CapacityError("brute force would enumerate " +
                        std::to_string(work) + " sets, above the cap of " +
                        std::to_string(work_cap));
  }

  OfflineSolution best{{}, f.Value({})};
  ElementSet candidate;
  std::vector<int> pick;
  for (int size = 1; size <= std::min(k, n); ++size) {
    pick.resize(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      candidate.clear();
      for (int i : pick) candidate.push_back(ids[i]);
      double value = f.Value(candidate);
      if (value > best.value ||
          (value == best.value && LexSmaller(candidate, best.set))) {
        best.set = candidate;
        best.value = value;
      }
      // Next combination in lexicographic order.
      int pos = size - 1;
      while (pos >= 0 && pick[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return best;
}

OfflineSolution RandomGreedy(const SubmodularFunction& f,
                             const ElementSet& ground, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("random greedy requires k >= 1");
  ElementSet remaining = ground;
  std::sort(remaining.begin(), remaining.end());
  ElementSet solution;
  double solution_value = f.Value(solution);

  struct Gain {
    double marginal;
    ElementId id;
  };
  std::vector<Gain> gains;
  for (int round = 0; round < k; ++round) {
    gains.clear();
    ElementSet with = solution;
    with.push_back(0);
    for (ElementId u : remaining) {
      with.back() = u;
      double marginal = f.Value(with) - solution_value;
      if (marginal > 0.0) gains.push_back({marginal, u});
    }
    std::sort(gains.begin(), gains.end(), [](const Gain& a, const Gain& b) {
      return a.marginal > b.marginal ||
             (a.marginal == b.marginal && a.id < b.id);
    });
    int real = std::min<int>(k, static_cast<int>(gains.size()));
    int slot = rng.UniformInt(k);  // slots >= real are zero-gain dummies
    if (slot < real) {
      solution.push_back(gains[slot].id);
      solution_value += gains[slot].marginal;
      remaining.erase(
          std::find(remaining.begin(), remaining.end(), gains[slot].id));
    }
  }
  std::sort(solution.begin(), solution.end());
  return {solution, f.Value(solution)};
}

}  // namespace sievestream
