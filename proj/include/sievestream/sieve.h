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
// Single-pass multilinear-threshold sieve for maximizing a non-negative
// (possibly non-monotone) submodular function under a cardinality
// constraint, in three variants:
//
//   RunKnownTau  - a single threshold tau (an estimate of f(OPT)) is given;
//                  an arriving element u gets a p-fraction added to the
//                  fractional solution x whenever dF/dx_u(x) >= c tau / k,
//                  clamped so that ||x||_1 never exceeds k.
//   RunAutoTau   - tau is unknown; a geometric grid of guesses
//                  T = {(1+eps')^h : m/(1+eps') <= (1+eps')^h <= mk/c} is
//                  maintained from the running maximum m of f(empty) and
//                  the singleton values, with one fractional solution per
//                  live guess.
//   RunSampled   - like RunAutoTau, with the exact derivative replaced by a
//                  Monte-Carlo estimate averaged over SampleCount(...) *
//                  sample_scale draws.
//
// After the pass each fractional solution is rounded (S1) and its support
// is handed to an offline solver (S2); the better of the two is that
// guess's candidate, and the best candidate overall is returned.
//
// Guesses whose fractional solutions are identical are stored once, as
// contiguous exponent bands of the grid; acceptance is monotone in tau
// inside a band, so processing an arrival splits a band at most once. This
// keeps fine grids (eps' = 1e-4 means tens of thousands of guesses) cheap
// while producing, guess for guess, the same states as independent
// processing: exact derivatives depend only on (x, u), and estimator
// streams are seeded by (seed, arrival, sample) only.

#ifndef SIEVESTREAM_SIEVE_H_
#define SIEVESTREAM_SIEVE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievestream/extensions.h"
#include "sievestream/fractional_vector.h"
#include "sievestream/offline.h"
#include "sievestream/random.h"
#include "sievestream/submodular_function.h"

namespace sievestream {

enum class OfflineMode { kBruteForce, kRandomGreedy };
enum class DerivativeMode { kExactWithFallback, kSampled };

// c = alpha (1-p) / (2 alpha + (1-p)^2); always in (0, 1/2].
double ChooseC(double alpha, double p);

// The acceptance threshold c tau / k. One shared expression so that the
// known-tau pass and the band search make bitwise-identical decisions.
inline double AcceptThreshold(double c, double tau, int k) {
  return c * tau / static_cast<double>(k);
}

// Seed of the derivative-estimator stream at a given arrival (1-based).
// Deliberately independent of the guess tau: guesses holding identical
// fractional solutions draw identical estimates, which is what makes
// band sharing transparent.
std::uint64_t DerivativeStreamSeed(std::uint64_t run_seed, int arrival);

struct SieveParams {
  int k = 1;
  double p = 0.125;          // fraction added per accepted element
  double alpha = 1.0;        // offline solver's inverse approximation ratio
  double c = 0.0;            // <= 0 selects ChooseC(alpha, p)
  double eps_prime = 0.125;  // grid granularity (auto/sampled variants)
  OfflineMode offline = OfflineMode::kBruteForce;

  // Sampled variant: effective sample count is
  // max(1, ceil(SampleCount(p,k,eps',i) * sample_scale)), then capped by
  // sample_cap when positive. The unscaled count is usually infeasible
  // (it passes 10^15 already at moderate k), hence the scale knob.
  double sample_scale = 1.0;
  std::int64_t sample_cap = 0;
  // Replaces the estimator with the exact derivative; the sampled variant
  // then matches the auto variant state for state.
  bool exact_derivative_override = false;

  int exact_support_cap = kDefaultExactSupportCap;
  std::uint64_t offline_work_cap = kDefaultBruteForceWorkCap;

  bool record_grid_trace = false;
  bool record_estimator_trace = false;

  double EffectiveC() const { return c > 0.0 ? c : ChooseC(alpha, p); }
  void Validate() const;  // throws std::invalid_argument
};

// Fractional solution built by the threshold rule. Every nonzero
// coordinate equals p except at most one clamped residual, and a residual
// exists only once ||x||_1 = k; Add() verifies this after every mutation.
struct FractionalSolution {
  FractionalVector x;
  bool saturated = false;

  // Adds min{p, k - ||x||_1} of u. Requires u outside the support and the
  // solution not yet saturated.
  void Add(ElementId u, double p, int k);

  // Structural invariant check; throws std::logic_error on violation.
  void CheckStructure(double p, int k) const;
};

// Per-guess state with the Algorithm-level accept rule.
class ThresholdState {
 public:
  explicit ThresholdState(double tau);

  // Threshold rule for an arriving element with the given derivative value:
  // accept (inclusive >=) and add the clamped fraction, or leave the state
  // unchanged. A saturated state ignores arrivals. Returns whether a
  // fraction of u was added.
  bool Process(ElementId u, double derivative, const SieveParams& params);

  double tau() const { return tau_; }
  const FractionalSolution& solution() const { return sol_; }
  const FractionalVector& x() const { return sol_.x; }
  bool saturated() const { return sol_.saturated; }

 private:
  double tau_;
  FractionalSolution sol_;
};

// Contiguous range [h_lo, h_hi] of grid exponents; empty when h_hi < h_lo.
struct GridWindow {
  int h_lo = 0;
  int h_hi = -1;

  bool Empty() const { return h_hi < h_lo; }
  int Size() const { return Empty() ? 0 : h_hi - h_lo + 1; }
};

// The guess value (1 + eps')^h.
double GridThreshold(double eps_prime, int h);

// Exponent window of {(1+eps')^h : m/(1+eps') <= (1+eps')^h <= mk/c}.
// Log-based bounds, then verified by direct comparison so membership is
// exact under floating point. m <= 0 yields the empty window. Accepts any
// eps_prime > 0.
GridWindow ComputeGridWindow(double m, int k, double c, double eps_prime);

// Upper bound on the number of live guesses:
// 1 + (1 + ln k - ln c) / ln(1 + eps').
double GridSizeBound(int k, double c, double eps_prime);

// Per-guess cap on stored elements, ceil(k / p).
int StoredElementsBound(int k, double p);

// One grid band after the pass. tau_lo/tau_hi are the guesses at h_lo/h_hi;
// all guesses in between share this fractional solution and candidates.
struct FinalizedThreshold {
  int h_lo = 0;
  int h_hi = 0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  FractionalVector x;
  double l1 = 0.0;
  bool saturated = false;
  int stored = 0;
  ElementSet s1;
  ElementSet s2;
  double f_s1 = 0.0;
  double f_s2 = 0.0;
  ElementSet best;
  double f_best = 0.0;
  std::optional<double> exact_f;  // filled by RunKnownTau when affordable
};

struct GridTraceEntry {
  int arrival = 0;  // 0 = state after initialization with f(empty)
  double m = 0.0;
  GridWindow window;
};

struct EstimatorTraceEntry {
  int arrival = 0;
  int h_lo = 0;
  int h_hi = 0;
  double estimate = 0.0;
  double exact = 0.0;
  bool has_exact = false;
};

struct RunDiagnostics {
  double m_final = 0.0;
  int t_max = 0;                 // max live guesses at any point
  std::int64_t max_stored = 0;   // max over time of sum over guesses of
                                 // stored elements (band width x support)
  std::int64_t oracle_calls = 0; // algorithm cost; trace extras excluded
  bool sampled_fallback_used = false;
  std::vector<FinalizedThreshold> finalized;  // ascending h
  std::vector<GridTraceEntry> grid_trace;
  std::vector<EstimatorTraceEntry> estimator_trace;
  double runtime_ms = 0.0;
};

struct RunResult {
  ElementSet solution;
  double value = 0.0;
  RunDiagnostics diagnostics;
};

// Algorithm with a known estimate tau > 0 of f(OPT). The stream must not
// repeat elements (single pass). Derivatives are exact while the support
// fits under exact_support_cap, then estimated.
RunResult RunKnownTau(const SubmodularFunction& f,
                      const std::vector<ElementId>& stream, double tau,
                      const SieveParams& params, std::uint64_t seed);

// Grid variant with exact derivatives (estimator fallback past the cap).
RunResult RunAutoTau(const SubmodularFunction& f,
                     const std::vector<ElementId>& stream,
                     const SieveParams& params, std::uint64_t seed);

// Grid variant with sampled derivatives.
RunResult RunSampled(const SubmodularFunction& f,
                     const std::vector<ElementId>& stream,
                     const SieveParams& params, std::uint64_t seed);

}  // namespace sievestream

#endif  // SIEVESTREAM_SIEVE_H_
