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

#include "sievestream/baselines.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sievestream {

OfflineSolution GreedyBaseline(const SubmodularFunction& f,
                               const ElementSet& ground, int k) {
  if (k < 0) throw std::invalid_argument("cardinality bound must be >= 0");
  ElementSet remaining = ground;
  std::sort(remaining.begin(), remaining.end());
  ElementSet solution;
  double value = f.Value(solution);
  for (int round = 0; round < k && !remaining.empty(); ++round) {
    double best_gain = 0.0;
    int best_index = -1;
    ElementSet with = solution;
    with.push_back(0);
    for (int i = 0; i < static_cast<int>(remaining.size()); ++i) {
      with.back() = remaining[i];
      double gain = f.Value(with) - value;
      if (gain > best_gain) {
        best_gain = gain;
        best_index = i;
      }
    }
    if (best_index < 0) break;  // no positive marginal left
    solution.push_back(remaining[best_index]);
    value += best_gain;
    remaining.erase(remaining.begin() + best_index);
  }
  std::sort(solution.begin(), solution.end());
  return {solution, f.Value(solution)};
}

IntegralSieveResult SieveStreamingBaseline(const SubmodularFunction& f,
                                           const std::vector<ElementId>& stream,
                                           int k, double eps) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("eps must be in (0, 0.5)");
  }

  struct Guess {
    ElementSet solution;
    double value = 0.0;
  };
  const double base = 1.0 + eps;
  std::map<int, Guess> guesses;  // exponent h -> state
  double m = 0.0;
  IntegralSieveResult result;

  auto window = [&](double top) {
    // h range with m <= base^h <= 2 k m, verified by direct comparison.
    int lo = static_cast<int>(std::log(top) / std::log(base));
    while (std::pow(base, lo) < top) ++lo;
    while (std::pow(base, lo - 1) >= top) --lo;
    double hi_bound = 2.0 * k * top;
    int hi = static_cast<int>(std::log(hi_bound) / std::log(base));
    while (std::pow(base, hi) > hi_bound) --hi;
    while (std::pow(base, hi + 1) <= hi_bound) ++hi;
    return std::pair<int, int>(lo, hi);
  };

  for (ElementId u : stream) {
    double singleton = f.Value({u});
    if (singleton > m) {
      m = singleton;
      auto [lo, hi] = window(m);
      for (auto it = guesses.begin(); it != guesses.end();) {
        if (it->first < lo || it->first > hi) {
          it = guesses.erase(it);
        } else {
          ++it;
        }
      }
      for (int h = lo; h <= hi; ++h) guesses.try_emplace(h);
    }
    for (auto& [h, guess] : guesses) {
      int size = static_cast<int>(guess.solution.size());
      if (size >= k) continue;
      double v = std::pow(base, h);
      double needed = (v / 2.0 - guess.value) / static_cast<double>(k - size);
      ElementSet with = guess.solution;
      with.push_back(u);
      double gain = f.Value(with) - guess.value;
      if (gain >= needed) {
        guess.solution = std::move(with);
        guess.value += gain;
      }
    }
    result.t_max = std::max(result.t_max, static_cast<int>(guesses.size()));
    std::int64_t stored = 0;
    for (const auto& [h, guess] : guesses) stored += guess.solution.size();
    result.max_stored = std::max(result.max_stored, stored);
  }

  result.value = f.Value({});
  result.solution = {};
  for (const auto& [h, guess] : guesses) {
    double value = f.Value(guess.solution);
    if (value > result.value) {
      result.value = value;
      result.solution = guess.solution;
    }
  }
  std::sort(result.solution.begin(), result.solution.end());
  return result;
}

}  // namespace sievestream
