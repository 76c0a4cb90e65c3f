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
// Multilinear extension F(x) = E[f(R(x))], its partial derivatives, the
// Lovasz extension, and the independent-inclusion sampler R(x).
//
// Exact evaluation enumerates the support of x, so it is gated by a support
// cap; past the cap callers switch to the sampled estimator. Elements with
// a zero coordinate never enter sampled sets and contribute nothing to the
// enumeration.

#ifndef SIEVESTREAM_EXTENSIONS_H_
#define SIEVESTREAM_EXTENSIONS_H_

#include <cstdint>

#include "sievestream/fractional_vector.h"
#include "sievestream/random.h"
#include "sievestream/submodular_function.h"

namespace sievestream {

// Support size past which exact enumeration (2^|supp| oracle calls) is
// refused. ~10^6 subsets at the default.
inline constexpr int kDefaultExactSupportCap = 20;

// Draws R(x): includes each support element independently with
// probability x_u.
ElementSet SampleSet(const FractionalVector& x, Rng& rng);

// Exact F(x) by enumeration over the support of x. Throws CapacityError
// when |supp(x)| exceeds support_cap.
double MultilinearExact(const SubmodularFunction& f, const FractionalVector& x,
                        int support_cap = kDefaultExactSupportCap);

// Exact dF/dx_u at x, i.e. F(x v 1_u) - F(x ^ 1_{N\{u}}). The two
// enumerations are paired so the result is bitwise equal to evaluating that
// difference with two MultilinearExact calls. Capacity is gated on
// |supp(x) \ {u}| + 1.
double PartialDerivativeExact(const SubmodularFunction& f,
                              const FractionalVector& x, ElementId u,
                              int support_cap = kDefaultExactSupportCap);

// Sample count for the derivative estimator at arrival index i:
//   ceil(4800 (1/p + 1)^2 k^2 / [eps'(1-eps')]^2 * ln(80 i^2 / eps')).
// Returns the formula value exactly (saturating at int64 max); any
// down-scaling is applied by callers, never here.
std::int64_t SampleCount(double p, int k, double eps_prime, std::int64_t i);

struct EstimatorStats {
  std::int64_t samples = 0;
  double variance = 0.0;  // unbiased sample variance of the draws
};

// Mean of `samples` i.i.d. draws of f(R(x) u {u}) - f(R(x)). Unbiased for
// dF/dx_u when x_u = 0. Sample t draws from an Rng seeded with
// MixSeed(stream_seed, t), so the result is a pure function of its
// arguments and identical under any future parallel fan-out.
double EstimatePartialDerivative(const SubmodularFunction& f,
                                 const FractionalVector& x, ElementId u,
                                 std::int64_t samples,
                                 std::uint64_t stream_seed,
                                 EstimatorStats* stats = nullptr);

// Exact Lovasz extension: sorts the distinct coordinate values and sums
// f(superlevel set) times segment length. At most |supp(x)| + 1 oracle
// calls.
double LovaszExact(const SubmodularFunction& f, const FractionalVector& x);

}  // namespace sievestream

#endif  // SIEVESTREAM_EXTENSIONS_H_
