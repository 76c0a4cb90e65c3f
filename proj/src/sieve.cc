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

#include "sievestream/sieve.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "sievestream/errors.h"
#include "sievestream/swap_rounding.h"

namespace sievestream {

namespace {

// Stream tags for deriving independent RNG streams from the master seed.
constexpr std::uint64_t kRoundingTag = 0x726e64;
constexpr std::uint64_t kOfflineTag = 0x6f666c;

std::uint64_t HSeed(std::uint64_t seed, std::uint64_t tag, int h) {
  return MixSeed(seed, tag,
                 static_cast<std::uint64_t>(static_cast<std::int64_t>(h)));
}

void CheckStreamIsSinglePass(const std::vector<ElementId>& stream) {
  std::unordered_set<ElementId> seen;
  for (ElementId u : stream) {
    if (!seen.insert(u).second) {
      throw std::invalid_argument("stream repeats element " +
                                  std::to_string(u));
    }
  }
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ElapsedMs() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::uint64_t DerivativeStreamSeed(std::uint64_t run_seed, int arrival) {
  constexpr std::uint64_t kDerivativeTag = 0x6472761;
  return MixSeed(run_seed, kDerivativeTag,
                 static_cast<std::uint64_t>(arrival));
}

double ChooseC(double alpha, double p) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1)");
  }
  return alpha * (1.0 - p) / (2.0 * alpha + (1.0 - p) * (1.0 - p));
}

void SieveParams::Validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1]");
  }
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) {
    throw std::invalid_argument("eps' must be in (0,1)");
  }
  if (!(sample_scale > 0.0 && sample_scale <= 1.0)) {
    throw std::invalid_argument("sample_scale must be in (0,1]");
  }
  if (sample_cap < 0) throw std::invalid_argument("sample_cap must be >= 0");
  if (exact_support_cap < 1) {
    throw std::invalid_argument("exact_support_cap must be >= 1");
  }
}

void FractionalSolution::Add(ElementId u, double p, int k) {
  if (saturated) throw std::logic_error("add to a saturated solution");
  if (x.Get(u) != 0.0) {
    throw std::invalid_argument("element already in the support");
  }
  const double remaining = static_cast<double>(k) - x.L1();
  if (remaining <= p) {
    x.Set(u, remaining);
    x.RestateL1(static_cast<double>(k));
    saturated = true;
  } else {
    x.Set(u, p);
  }
  CheckStructure(p, k);
}

void FractionalSolution::CheckStructure(double p, int k) const {
  int non_p = 0;
  for (const auto& [id, value] : x.coords()) {
    if (value != p) ++non_p;
  }
  const double kd = static_cast<double>(k);
  if (non_p > 1 ||
      (non_p == 1 && (!saturated || x.L1() != kd)) ||
      (saturated && x.L1() != kd)) {
    throw std::logic_error("threshold solution structure violated");
  }
  if (x.SupportSize() > StoredElementsBound(k, p)) {
    throw std::logic_error("stored elements exceed ceil(k/p)");
  }
}

ThresholdState::ThresholdState(double tau) : tau_(tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
}

bool ThresholdState::Process(ElementId u, double derivative,
                             const SieveParams& params) {
  if (sol_.saturated) return false;
  if (derivative >= AcceptThreshold(params.EffectiveC(), tau_, params.k)) {
    sol_.Add(u, params.p, params.k);
    return true;
  }
  return false;
}

double GridThreshold(double eps_prime, int h) {
  return std::pow(1.0 + eps_prime, static_cast<double>(h));
}

GridWindow ComputeGridWindow(double m, int k, double c, double eps_prime) {
  if (!(eps_prime > 0.0)) {
    throw std::invalid_argument("eps' must be positive");
  }
  if (!(c > 0.0) || k < 1) {
    throw std::invalid_argument("grid requires c > 0 and k >= 1");
  }
  GridWindow window;
  // Values below the double grid range cannot be represented as (1+eps')^h
  // comparisons; treat them as no window (m = 0 behaves the same).
  if (!(m > 1e-300)) return window;

  const double lo_bound = m / (1.0 + eps_prime);
  double hi_bound = m * static_cast<double>(k) / c;
  if (!std::isfinite(hi_bound)) {
    hi_bound = std::numeric_limits<double>::max();
  }
  const double log_base = std::log1p(eps_prime);
  auto estimate = [&](double bound) {
    double e = std::log(bound) / log_base;
    e = std::clamp(e, -2.0e9, 2.0e9);
    return static_cast<int>(e);
  };

  int h_lo = estimate(lo_bound);
  while (GridThreshold(eps_prime, h_lo) < lo_bound) ++h_lo;
  while (GridThreshold(eps_prime, h_lo - 1) >= lo_bound) --h_lo;

  int h_hi = estimate(hi_bound);
  while (GridThreshold(eps_prime, h_hi) > hi_bound) --h_hi;
  while (GridThreshold(eps_prime, h_hi + 1) <= hi_bound) ++h_hi;

  window.h_lo = h_lo;
  window.h_hi = h_hi;
  return window;
}

double GridSizeBound(int k, double c, double eps_prime) {
  return 1.0 + (1.0 + std::log(static_cast<double>(k)) - std::log(c)) /
                   std::log1p(eps_prime);
}

int StoredElementsBound(int k, double p) {
  return static_cast<int>(std::ceil(static_cast<double>(k) / p));
}

namespace {

// Shared pass machinery for the grid variants. Guesses with identical
// fractional solutions are stored as one band; see the header comment.
class SievePass {
 public:
  SievePass(const SubmodularFunction& f, const SieveParams& params,
            DerivativeMode mode, std::uint64_t seed)
      : f_(f), params_(params), mode_(mode), seed_(seed),
        c_(params.EffectiveC()), calls_start_(f.Calls()) {
    params_.Validate();
  }

  RunResult RunGrid(const std::vector<ElementId>& stream) {
    Stopwatch watch;
    CheckStreamIsSinglePass(stream);
    double empty_value = f_.Value({});
    if (empty_value > m_) UpdateGridAndBands(empty_value);
    RecordGridTrace(0);
    UpdateAccounting();
    for (ElementId u : stream) {
      ++arrival_;
      double singleton = f_.Value({u});
      if (singleton > m_) UpdateGridAndBands(singleton);
      RecordGridTrace(arrival_);
      ProcessBands(u);
      UpdateAccounting();
    }
    RunResult result = FinalizeGrid();
    result.diagnostics.runtime_ms = watch.ElapsedMs();
    return result;
  }

  RunResult RunSingle(const std::vector<ElementId>& stream, double tau) {
    Stopwatch watch;
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    CheckStreamIsSinglePass(stream);
    ThresholdState state(tau);
    for (ElementId u : stream) {
      ++arrival_;
      if (state.saturated()) break;
      double d = Derivative(state.x(), u, 0, 0);
      state.Process(u, d, params_);
      max_stored_ = std::max<std::int64_t>(max_stored_, state.x().SupportSize());
    }
    RunResult result;
    FinalizedThreshold fin =
        FinalizeBand(state.solution(), 0, 0, tau, tau);
    result.solution = fin.best;
    result.value = fin.f_best;
    // Exact F of the final solution, when affordable; kept out of the call
    // accounting.
    if (state.x().SupportSize() <= params_.exact_support_cap) {
      std::int64_t before = f_.Calls();
      fin.exact_f = MultilinearExact(f_, state.x(), params_.exact_support_cap);
      diagnostic_calls_ += f_.Calls() - before;
    }
    result.diagnostics.finalized.push_back(std::move(fin));
    result.diagnostics.t_max = 1;
    result.diagnostics.max_stored = max_stored_;
    result.diagnostics.oracle_calls = AlgorithmCalls();
    result.diagnostics.sampled_fallback_used = sampled_fallback_used_;
    result.diagnostics.estimator_trace = std::move(estimator_trace_);
    result.diagnostics.runtime_ms = watch.ElapsedMs();
    return result;
  }

 private:
  struct Band {
    int h_lo;
    int h_hi;
    FractionalSolution sol;
  };

  std::int64_t AlgorithmCalls() const {
    return f_.Calls() - calls_start_ - diagnostic_calls_;
  }

  void RecordGridTrace(int arrival) {
    if (!params_.record_grid_trace) return;
    grid_trace_.push_back({arrival, m_, window_});
  }

  void UpdateAccounting() {
    t_max_ = std::max(t_max_, window_.Size());
    std::int64_t stored = 0;
    for (const Band& band : bands_) {
      stored += static_cast<std::int64_t>(band.h_hi - band.h_lo + 1) *
                band.sol.x.SupportSize();
    }
    max_stored_ = std::max(max_stored_, stored);
  }

  // Recomputes the window for a larger m; guesses that fall out are deleted
  // with their states, survivors are untouched, new guesses start empty.
  void UpdateGridAndBands(double new_m) {
    m_ = new_m;
    GridWindow next = ComputeGridWindow(m_, params_.k, c_, params_.eps_prime);
    if (next.Empty()) {
      bands_.clear();
      window_ = next;
      return;
    }
    std::size_t drop = 0;
    while (drop < bands_.size() && bands_[drop].h_hi < next.h_lo) ++drop;
    if (drop > 0) bands_.erase(bands_.begin(), bands_.begin() + drop);
    if (!bands_.empty()) {
      bands_.front().h_lo = std::max(bands_.front().h_lo, next.h_lo);
    }
    if (bands_.empty()) {
      bands_.push_back({next.h_lo, next.h_hi, {}});
    } else if (next.h_hi > window_.h_hi) {
      Band& top = bands_.back();
      if (top.sol.x.Empty()) {
        top.h_hi = next.h_hi;
      } else {
        bands_.push_back({window_.h_hi + 1, next.h_hi, {}});
      }
    }
    window_ = next;
  }

  // Applies the threshold rule of every live guess to the arrival. Within a
  // band the accept predicate d >= c tau_h / k is monotone (tau_h increases
  // with h), so the band splits into an accepting prefix and the rest.
  void ProcessBands(ElementId u) {
    if (window_.Empty()) return;
    std::vector<Band> next;
    next.reserve(bands_.size() + 1);
    for (Band& band : bands_) {
      if (band.sol.saturated) {
        next.push_back(std::move(band));
        continue;
      }
      double d = Derivative(band.sol.x, u, band.h_lo, band.h_hi);
      int h_acc = LargestAcceptingExponent(band, d);
      if (h_acc < band.h_lo) {
        next.push_back(std::move(band));
      } else if (h_acc >= band.h_hi) {
        band.sol.Add(u, params_.p, params_.k);
        next.push_back(std::move(band));
      } else {
        Band accepted{band.h_lo, h_acc, band.sol};
        accepted.sol.Add(u, params_.p, params_.k);
        next.push_back(std::move(accepted));
        band.h_lo = h_acc + 1;
        next.push_back(std::move(band));
      }
    }
    bands_ = std::move(next);
  }

  int LargestAcceptingExponent(const Band& band, double d) const {
    auto accepts = [&](int h) {
      return d >= AcceptThreshold(c_, GridThreshold(params_.eps_prime, h),
                                  params_.k);
    };
    if (!accepts(band.h_lo)) return band.h_lo - 1;
    if (accepts(band.h_hi)) return band.h_hi;
    int lo = band.h_lo;  // accepts
    int hi = band.h_hi;  // rejects
    while (hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      if (accepts(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  std::int64_t EffectiveSampleCount() const {
    std::int64_t full = SampleCount(params_.p, params_.k, params_.eps_prime,
                                    arrival_);
    long double scaled = std::ceil(static_cast<long double>(full) *
                                   static_cast<long double>(params_.sample_scale));
    std::int64_t count =
        scaled >= static_cast<long double>(
                      std::numeric_limits<std::int64_t>::max())
            ? std::numeric_limits<std::int64_t>::max()
            : static_cast<std::int64_t>(scaled);
    count = std::max<std::int64_t>(count, 1);
    if (params_.sample_cap > 0) {
      count = std::min(count, params_.sample_cap);
    }
    return count;
  }

  double Derivative(const FractionalVector& x, ElementId u, int h_lo,
                    int h_hi) {
    const bool exact_affordable =
        x.SupportSize() + 1 <= params_.exact_support_cap;
    bool use_exact = mode_ == DerivativeMode::kExactWithFallback ||
                     params_.exact_derivative_override;
    if (use_exact && exact_affordable) {
      return PartialDerivativeExact(f_, x, u, params_.exact_support_cap);
    }
    if (use_exact) sampled_fallback_used_ = true;
    std::uint64_t stream_seed = DerivativeStreamSeed(seed_, arrival_);
    double estimate = EstimatePartialDerivative(f_, x, u,
                                                EffectiveSampleCount(),
                                                stream_seed);
    if (params_.record_estimator_trace) {
      EstimatorTraceEntry entry{arrival_, h_lo, h_hi, estimate, 0.0, false};
      if (exact_affordable) {
        std::int64_t before = f_.Calls();
        entry.exact =
            PartialDerivativeExact(f_, x, u, params_.exact_support_cap);
        entry.has_exact = true;
        diagnostic_calls_ += f_.Calls() - before;
      }
      estimator_trace_.push_back(entry);
    }
    return estimate;
  }

  FinalizedThreshold FinalizeBand(const FractionalSolution& sol, int h_lo,
                                  int h_hi, double tau_lo, double tau_hi) {
    FinalizedThreshold fin;
    fin.h_lo = h_lo;
    fin.h_hi = h_hi;
    fin.tau_lo = tau_lo;
    fin.tau_hi = tau_hi;
    fin.x = sol.x;
    fin.l1 = sol.x.L1();
    fin.saturated = sol.saturated;
    fin.stored = sol.x.SupportSize();

    Rng round_rng(HSeed(seed_, kRoundingTag, h_lo));
    fin.s1 = SwapRound(sol.x, params_.k, round_rng);
    ElementSet support = sol.x.Support();
    if (params_.offline == OfflineMode::kBruteForce) {
      fin.s2 = BruteForce(f_, support, params_.k, params_.offline_work_cap).set;
    } else {
      Rng greedy_rng(HSeed(seed_, kOfflineTag, h_lo));
      fin.s2 = RandomGreedy(f_, support, params_.k, greedy_rng).set;
    }
    fin.f_s1 = f_.Value(fin.s1);
    fin.f_s2 = f_.Value(fin.s2);
    if (fin.f_s1 >= fin.f_s2) {
      fin.best = fin.s1;
      fin.f_best = fin.f_s1;
    } else {
      fin.best = fin.s2;
      fin.f_best = fin.f_s2;
    }
    return fin;
  }

  RunResult FinalizeGrid() {
    RunResult result;
    if (window_.Empty()) {
      result.solution = {};
      result.value = f_.Value({});
    } else {
      bool first = true;
      for (const Band& band : bands_) {
        FinalizedThreshold fin = FinalizeBand(
            band.sol, band.h_lo, band.h_hi,
            GridThreshold(params_.eps_prime, band.h_lo),
            GridThreshold(params_.eps_prime, band.h_hi));
        if (first || fin.f_best > result.value) {
          result.solution = fin.best;
          result.value = fin.f_best;
          first = false;
        }
        result.diagnostics.finalized.push_back(std::move(fin));
      }
    }
    result.diagnostics.m_final = m_;
    result.diagnostics.t_max = t_max_;
    result.diagnostics.max_stored = max_stored_;
    result.diagnostics.oracle_calls = AlgorithmCalls();
    result.diagnostics.sampled_fallback_used = sampled_fallback_used_;
    result.diagnostics.grid_trace = std::move(grid_trace_);
    result.diagnostics.estimator_trace = std::move(estimator_trace_);
    return result;
  }

  const SubmodularFunction& f_;
  SieveParams params_;
  DerivativeMode mode_;
  std::uint64_t seed_;
  double c_;
  std::int64_t calls_start_;
  std::int64_t diagnostic_calls_ = 0;

  double m_ = 0.0;
  GridWindow window_;
  std::vector<Band> bands_;
  int arrival_ = 0;

  int t_max_ = 0;
  std::int64_t max_stored_ = 0;
  bool sampled_fallback_used_ = false;
  std::vector<GridTraceEntry> grid_trace_;
  std::vector<EstimatorTraceEntry> estimator_trace_;
};

}  // namespace

RunResult RunKnownTau(const SubmodularFunction& f,
                      const std::vector<ElementId>& stream, double tau,
                      const SieveParams& params, std::uint64_t seed) {
  SievePass pass(f, params, DerivativeMode::kExactWithFallback, seed);
  return pass.RunSingle(stream, tau);
}

RunResult RunAutoTau(const SubmodularFunction& f,
                     const std::vector<ElementId>& stream,
                     const SieveParams& params, std::uint64_t seed) {
  SievePass pass(f, params, DerivativeMode::kExactWithFallback, seed);
  return pass.RunGrid(stream);
}

RunResult RunSampled(const SubmodularFunction& f,
                     const std::vector<ElementId>& stream,
                     const SieveParams& params, std::uint64_t seed) {
  SievePass pass(f, params, DerivativeMode::kSampled, seed);
  return pass.RunGrid(stream);
}

}  // namespace sievestream
