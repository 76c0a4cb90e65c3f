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
// Reference baselines for the experiment harness. Both are strongest on
// monotone objectives; they run on any oracle but carry no guarantee in the
// non-monotone case.

#ifndef SIEVESTREAM_BASELINES_H_
#define SIEVESTREAM_BASELINES_H_

#include <cstdint>
#include <vector>

#include "sievestream/offline.h"
#include "sievestream/submodular_function.h"

namespace sievestream {

// Offline greedy: k rounds, each adding the element of largest positive
// marginal gain (ties to the smallest id).
OfflineSolution GreedyBaseline(const SubmodularFunction& f,
                               const ElementSet& ground, int k);

struct IntegralSieveResult {
  ElementSet solution;
  double value = 0.0;
  int t_max = 0;                // max live guesses
  std::int64_t max_stored = 0;  // max total elements kept across guesses
};

// Classic single-pass integral thresholding over a geometric grid of OPT
// guesses {(1+eps)^h : m <= (1+eps)^h <= 2 k m}, m the running singleton
// maximum. Each guess v keeps at most k elements, adding u when its gain
// reaches (v/2 - f(S_v)) / (k - |S_v|). Guarantees (1/2 - eps) OPT for
// monotone objectives.
IntegralSieveResult SieveStreamingBaseline(const SubmodularFunction& f,
                                           const std::vector<ElementId>& stream,
                                           int k, double eps);

}  // namespace sievestream

#endif  // SIEVESTREAM_BASELINES_H_
