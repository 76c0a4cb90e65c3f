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
// Randomized rounding of a point in the uniform-matroid polytope
// (||x||_1 <= k, x in [0,1]^N) into a set of size at most k.
//
// Repeatedly merges the two lowest-id fractional coordinates: the merge
// keeps the pair sum, sends one coordinate to 0 or 1, and picks the
// survivor with the probability that preserves both marginals. F is convex
// along e_i - e_j for submodular f, so each merge cannot decrease E[F(x)];
// a leftover fractional coordinate (when ||x||_1 is not integral) is
// Bernoulli-rounded, in which F is linear. Hence Pr[u in S] = x_u for every
// u and E[f(S)] >= F(x).

#ifndef SIEVESTREAM_SWAP_ROUNDING_H_
#define SIEVESTREAM_SWAP_ROUNDING_H_

#include <string>
#include <vector>

#include "sievestream/fractional_vector.h"
#include "sievestream/random.h"

namespace sievestream {

struct RoundingStep {
  ElementId i = -1;  // the pair merged; j = -1 marks the final
  ElementId j = -1;  // Bernoulli step on a lone fractional coordinate
  ElementId survivor = -1;  // coordinate that received mass (-1: went to 0)
  double prob = 0.0;        // probability of the branch that was taken
};

struct RoundingTrace {
  std::vector<RoundingStep> steps;
  ElementSet final_set;

  std::string ToJsonString() const;
};

// Coordinates below this are zeroed before rounding.
inline constexpr double kRoundingCoordinateFloor = 1e-12;

// Requires ||x||_1 <= k + 1e-9 (throws std::invalid_argument otherwise).
// Output is a subset of supp(x) of size at most k; integral inputs pass
// through unchanged with an empty trace.
ElementSet SwapRound(const FractionalVector& x, int k, Rng& rng,
                     RoundingTrace* trace = nullptr);

}  // namespace sievestream

#endif  // SIEVESTREAM_SWAP_ROUNDING_H_
