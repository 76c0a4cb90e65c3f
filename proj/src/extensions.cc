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

#include "sievestream/extensions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sievestream/errors.h"

namespace sievestream {

namespace {

using Coord = std::pair<ElementId, double>;

std::vector<Coord> SupportCoords(const FractionalVector& x) {
  std::vector<Coord> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) coords.push_back(c);
  return coords;
}

void CheckSupportCap(int support, int cap, const char* what) {
  if (support > cap) {
    throw CapacityError(std::string(what) + ": support size " +
                        std::to_string(support) + " exceeds the exact cap " +
                        std::to_string(cap) +
                        "; use the sampled estimator instead");
  }
}

// Weighted sum over all subsets of coords[idx..]; prob carries the
// probability mass of the fixed prefix. Branches with zero mass are pruned,
// which makes integral vectors evaluate to a single oracle call and keeps
// F(1_S) = f(S) exact. Exclude branch first, include second; the resulting
// reduction tree is what the derivative pairing below relies on.
double SubsetSumMask(const SubmodularFunction& f,
                     const std::vector<Coord>& coords, std::size_t idx,
                     std::uint64_t mask, double prob) {
  if (prob == 0.0) return 0.0;
  if (idx == coords.size()) return prob * f.ValueMask(mask);
  const auto& [id, q] = coords[idx];
  double total = SubsetSumMask(f, coords, idx + 1, mask, prob * (1.0 - q));
  total += SubsetSumMask(f, coords, idx + 1, mask | (std::uint64_t{1} << id),
                         prob * q);
  return total;
}

double SubsetSumSet(const SubmodularFunction& f,
                    const std::vector<Coord>& coords, std::size_t idx,
                    ElementSet& scratch, double prob) {
  if (prob == 0.0) return 0.0;
  if (idx == coords.size()) return prob * f.Value(scratch);
  const auto& [id, q] = coords[idx];
  double total = SubsetSumSet(f, coords, idx + 1, scratch, prob * (1.0 - q));
  scratch.push_back(id);
  total += SubsetSumSet(f, coords, idx + 1, scratch, prob * q);
  scratch.pop_back();
  return total;
}

struct PairedSums {
  double with_u = 0.0;
  double without_u = 0.0;
};

// Enumerates subsets A of coords (= supp(x) \ {u}) once, accumulating
// sum prob(A) f(A u {u}) and sum prob(A) f(A) in the same reduction trees
// SubsetSum* would produce for x v 1_u and x ^ 1_{N\{u}} respectively
// (the u coordinate of x v 1_u contributes an exact factor 1.0 and a pruned
// zero branch). Their difference is therefore bitwise equal to the
// two-evaluation route.
PairedSums PairedSubsetSumMask(const SubmodularFunction& f,
                               const std::vector<Coord>& coords,
                               std::size_t idx, std::uint64_t mask,
                               std::uint64_t u_bit, double prob) {
  if (prob == 0.0) return {};
  if (idx == coords.size()) {
    return {prob * f.ValueMask(mask | u_bit), prob * f.ValueMask(mask)};
  }
  const auto& [id, q] = coords[idx];
  PairedSums total =
      PairedSubsetSumMask(f, coords, idx + 1, mask, u_bit, prob * (1.0 - q));
  PairedSums inc = PairedSubsetSumMask(
      f, coords, idx + 1, mask | (std::uint64_t{1} << id), u_bit, prob * q);
  total.with_u += inc.with_u;
  total.without_u += inc.without_u;
  return total;
}

PairedSums PairedSubsetSumSet(const SubmodularFunction& f,
                              const std::vector<Coord>& coords,
                              std::size_t idx, ElementSet& scratch,
                              ElementId u, double prob) {
  if (prob == 0.0) return {};
  if (idx == coords.size()) {
    double without = f.Value(scratch);
    scratch.push_back(u);
    double with = f.Value(scratch);
    scratch.pop_back();
    return {prob * with, prob * without};
  }
  const auto& [id, q] = coords[idx];
  PairedSums total =
      PairedSubsetSumSet(f, coords, idx + 1, scratch, u, prob * (1.0 - q));
  scratch.push_back(id);
  PairedSums inc =
      PairedSubsetSumSet(f, coords, idx + 1, scratch, u, prob * q);
  scratch.pop_back();
  total.with_u += inc.with_u;
  total.without_u += inc.without_u;
  return total;
}

}  // namespace

ElementSet SampleSet(const FractionalVector& x, Rng& rng) {
  ElementSet sample;
  for (const auto& [id, q] : x.coords()) {
    if (rng.Uniform() < q) sample.push_back(id);
  }
  return sample;
}

double MultilinearExact(const SubmodularFunction& f, const FractionalVector& x,
                        int support_cap) {
  CheckSupportCap(x.SupportSize(), support_cap, "multilinear evaluation");
  std::vector<Coord> coords = SupportCoords(x);
  if (f.SupportsMask()) return SubsetSumMask(f, coords, 0, 0, 1.0);
  ElementSet scratch;
  return SubsetSumSet(f, coords, 0, scratch, 1.0);
}

double PartialDerivativeExact(const SubmodularFunction& f,
                              const FractionalVector& x, ElementId u,
                              int support_cap) {
  if (u < 0 || u >= f.n()) {
    throw std::invalid_argument("derivative coordinate out of range");
  }
  std::vector<Coord> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) {
    if (c.first != u) coords.push_back(c);
  }
  CheckSupportCap(static_cast<int>(coords.size()) + 1, support_cap,
                  "derivative evaluation");
  PairedSums sums;
  if (f.SupportsMask()) {
    sums = PairedSubsetSumMask(f, coords, 0, 0, std::uint64_t{1} << u, 1.0);
  } else {
    ElementSet scratch;
    sums = PairedSubsetSumSet(f, coords, 0, scratch, u, 1.0);
  }
  return sums.with_u - sums.without_u;
}

std::int64_t SampleCount(double p, int k, double eps_prime, std::int64_t i) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("sample count requires p in (0, 1)");
  }
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) {
    throw std::invalid_argument("sample count requires eps' in (0, 1)");
  }
  if (k < 1) throw std::invalid_argument("sample count requires k >= 1");
  if (i < 1) throw std::invalid_argument("sample count requires i >= 1");
  const long double pk = (1.0L / p + 1.0L) * k;
  const long double denom =
      static_cast<long double>(eps_prime) * (1.0L - eps_prime);
  const long double log_term =
      std::log(80.0L * static_cast<long double>(i) * i / eps_prime);
  const long double count = std::ceil(4800.0L * pk * pk / (denom * denom) *
                                      log_term);
  if (count >=
      static_cast<long double>(std::numeric_limits<std::int64_t>::max())) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return static_cast<std::int64_t>(count);
}

double EstimatePartialDerivative(const SubmodularFunction& f,
                                 const FractionalVector& x, ElementId u,
                                 std::int64_t samples,
                                 std::uint64_t stream_seed,
                                 EstimatorStats* stats) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (u < 0 || u >= f.n()) {
    throw std::invalid_argument("derivative coordinate out of range");
  }
  const std::vector<Coord> coords = SupportCoords(x);
  double mean = 0.0;
  double m2 = 0.0;
  if (f.SupportsMask()) {
    const std::uint64_t u_bit = std::uint64_t{1} << u;
    for (std::int64_t t = 0; t < samples; ++t) {
      Rng rng(MixSeed(stream_seed, static_cast<std::uint64_t>(t)));
      std::uint64_t r = 0;
      for (const auto& [id, q] : coords) {
        if (rng.Uniform() < q) r |= std::uint64_t{1} << id;
      }
      double y = f.ValueMask(r | u_bit) - f.ValueMask(r);
      double delta = y - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta * (y - mean);
    }
  } else {
    ElementSet r;
    for (std::int64_t t = 0; t < samples; ++t) {
      Rng rng(MixSeed(stream_seed, static_cast<std::uint64_t>(t)));
      r.clear();
      bool u_drawn = false;
      for (const auto& [id, q] : coords) {
        if (rng.Uniform() < q) {
          r.push_back(id);
          if (id == u) u_drawn = true;
        }
      }
      double without = f.Value(r);
      double with = without;
      if (!u_drawn) {
        r.push_back(u);
        with = f.Value(r);
        r.pop_back();
      } else {
        with = f.Value(r);  // R u {u} = R; evaluated as written
      }
      double y = with - without;
      double delta = y - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta * (y - mean);
    }
  }
  if (stats != nullptr) {
    stats->samples = samples;
    stats->variance = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  }
  return mean;
}

double LovaszExact(const SubmodularFunction& f, const FractionalVector& x) {
  // Distinct positive coordinate values, descending; T_lambda is constant
  // between consecutive values.
  std::vector<double> levels;
  levels.reserve(x.coords().size());
  for (const auto& [id, q] : x.coords()) levels.push_back(q);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double total = 0.0;
  if (levels.empty() || levels.front() < 1.0) {
    double top = levels.empty() ? 0.0 : levels.front();
    total += (1.0 - top) * f.Value({});
  }
  ElementSet level_set;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& [id, q] : x.coords()) {
      if (q == levels[i]) level_set.push_back(id);
    }
    double next = i + 1 < levels.size() ? levels[i + 1] : 0.0;
    double length = levels[i] - next;
    if (length > 0.0) total += length * f.Value(level_set);
  }
  return total;
}

}  // namespace sievestream
