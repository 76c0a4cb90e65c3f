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

#include "sievestream/submodular_function.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace sievestream {

namespace {

std::uint64_t PackMask(const ElementSet& set) {
  std::uint64_t mask = 0;
  for (ElementId u : set) mask |= std::uint64_t{1} << u;
  return mask;
}

}  // namespace

SubmodularFunction::SubmodularFunction(GroundSet ground)
    : ground_(std::move(ground)) {
  if (ground_.n < 0) {
    throw std::invalid_argument("ground set size must be non-negative");
  }
  if (!ground_.labels.empty() &&
      static_cast<int>(ground_.labels.size()) != ground_.n) {
    throw std::invalid_argument("label count does not match ground set size");
  }
}

void SubmodularFunction::CheckIds(const ElementSet& set) const {
  for (ElementId u : set) {
    if (u < 0 || u >= ground_.n) {
      throw std::invalid_argument("element id " + std::to_string(u) +
                                  " out of range [0, " +
                                  std::to_string(ground_.n) + ")");
    }
  }
}

double SubmodularFunction::Value(const ElementSet& set) const {
  CheckIds(set);
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (SupportsMask()) return EvaluateMask(PackMask(set));
  return EvaluateSet(set);
}

double SubmodularFunction::ValueMask(std::uint64_t mask) const {
  if (!SupportsMask()) {
    throw std::invalid_argument("mask evaluation requires n <= 64");
  }
  if (ground_.n < 64 && (mask >> ground_.n) != 0) {
    throw std::invalid_argument("mask has bits outside the ground set");
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  return EvaluateMask(mask);
}

double SubmodularFunction::Marginal(ElementId u, const ElementSet& set) const {
  if (std::find(set.begin(), set.end(), u) != set.end()) {
    throw std::invalid_argument("marginal requires u not in S");
  }
  ElementSet with = set;
  with.push_back(u);
  double value_with = Value(with);
  return value_with - Value(set);
}

double SubmodularFunction::EvaluateSet(const ElementSet&) const {
  throw std::logic_error("objective does not support ground sets with n > 64");
}

// ---------------------------------------------------------------------------
// Coverage

CoverageFunction::CoverageFunction(std::vector<double> universe_weights,
                                   std::vector<std::vector<int>> covers,
                                   std::vector<std::string> labels)
    : SubmodularFunction(
          GroundSet{static_cast<int>(covers.size()), std::move(labels)}),
      weights_(std::move(universe_weights)),
      covers_(std::move(covers)) {
  const int universe = static_cast<int>(weights_.size());
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("universe weights must be non-negative");
    }
  }
  for (const auto& cover : covers_) {
    for (int j : cover) {
      if (j < 0 || j >= universe) {
        throw std::invalid_argument("cover index out of universe range");
      }
    }
  }
  fast_ = universe <= 64;
  if (fast_) {
    cover_masks_.reserve(covers_.size());
    for (const auto& cover : covers_) {
      std::uint64_t m = 0;
      for (int j : cover) m |= std::uint64_t{1} << j;
      cover_masks_.push_back(m);
    }
    // Per-byte weight-sum tables: weight of a universe mask is the sum of
    // one lookup per byte.
    const int bytes = (universe + 7) / 8;
    byte_weight_.resize(bytes);
    for (int b = 0; b < bytes; ++b) {
      for (int sub = 0; sub < 256; ++sub) {
        double s = 0.0;
        for (int bit = 0; bit < 8; ++bit) {
          int j = 8 * b + bit;
          if ((sub >> bit & 1) && j < universe) s += weights_[j];
        }
        byte_weight_[b][sub] = s;
      }
    }
  }
}

double CoverageFunction::EvaluateMask(std::uint64_t mask) const {
  if (!fast_) {
    ElementSet set;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      set.push_back(std::countr_zero(m));
    }
    return UnionWeightGeneric(set);
  }
  std::uint64_t covered = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    covered |= cover_masks_[std::countr_zero(m)];
  }
  double total = 0.0;
  for (std::size_t b = 0; b < byte_weight_.size(); ++b) {
    total += byte_weight_[b][(covered >> (8 * b)) & 0xff];
  }
  return total;
}

double CoverageFunction::EvaluateSet(const ElementSet& set) const {
  return UnionWeightGeneric(set);
}

double CoverageFunction::UnionWeightGeneric(const ElementSet& set) const {
  thread_local std::vector<char> marked;
  marked.assign(weights_.size(), 0);
  double total = 0.0;
  for (ElementId u : set) {
    for (int j : covers_[u]) {
      if (!marked[j]) {
        marked[j] = 1;
        total += weights_[j];
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Cut

CutFunction::CutFunction(int n, std::vector<Edge> edges,
                         std::vector<std::string> labels)
    : SubmodularFunction(GroundSet{n, std::move(labels)}),
      edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.a == e.b) throw std::invalid_argument("self-loops are not allowed");
    if (!(e.w >= 0.0)) {
      throw std::invalid_argument("edge weights must be non-negative");
    }
  }
}

// Summing the weights of edges with exactly one endpoint inside keeps the
// value a sum of non-negative terms; a degree-minus-internal formulation
// would cancel to tiny negatives on near-closed sets.
double CutFunction::EvaluateMask(std::uint64_t mask) const {
  double total = 0.0;
  for (const Edge& e : edges_) {
    if (((mask >> e.a) ^ (mask >> e.b)) & 1) total += e.w;
  }
  return total;
}

double CutFunction::EvaluateSet(const ElementSet& set) const {
  thread_local std::vector<char> inside;
  inside.assign(n(), 0);
  for (ElementId u : set) inside[u] = 1;
  double total = 0.0;
  for (const Edge& e : edges_) {
    if (inside[e.a] != inside[e.b]) total += e.w;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Hard instance

namespace {

GroundSet HardGround(int k, int h) {
  if (k < 1 || h < 1) {
    throw std::invalid_argument("hard instance requires k >= 1 and h >= 1");
  }
  GroundSet g;
  g.n = k + h;
  g.labels.reserve(g.n);
  for (int i = 1; i <= k - 1; ++i) g.labels.push_back("u" + std::to_string(i));
  for (int i = 1; i <= h; ++i) g.labels.push_back("v" + std::to_string(i));
  g.labels.push_back("w");
  return g;
}

}  // namespace

HardInstanceFunction::HardInstanceFunction(int k, int h)
    : SubmodularFunction(HardGround(k, h)), k_(k), h_(h) {}

double HardInstanceFunction::EvaluateMask(std::uint64_t mask) const {
  const std::uint64_t w_bit = std::uint64_t{1} << w_id();
  if ((mask & w_bit) == 0) return static_cast<double>(std::popcount(mask));
  const std::uint64_t u_mask = (std::uint64_t{1} << (k_ - 1)) - 1;
  return static_cast<double>(k_ + std::popcount(mask & u_mask));
}

double HardInstanceFunction::EvaluateSet(const ElementSet& set) const {
  bool has_w = false;
  int u_count = 0;
  for (ElementId u : set) {
    if (u == w_id()) has_w = true;
    if (u < k_ - 1) ++u_count;
  }
  if (!has_w) return static_cast<double>(set.size());
  return static_cast<double>(k_ + u_count);
}

std::unique_ptr<SubmodularFunction> MakeHardInstance(int k, int h) {
  return std::make_unique<HardInstanceFunction>(k, h);
}

// ---------------------------------------------------------------------------
// Memoization

MemoizingFunction::MemoizingFunction(
    std::unique_ptr<SubmodularFunction> inner)
    : SubmodularFunction(inner->ground()), inner_(std::move(inner)) {}

double MemoizingFunction::EvaluateMask(std::uint64_t mask) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = mask_cache_.find(mask);
  if (it != mask_cache_.end()) return it->second;
  double value = inner_->ValueMask(mask);
  mask_cache_.emplace(mask, value);
  return value;
}

double MemoizingFunction::EvaluateSet(const ElementSet& set) const {
  ElementSet key = set;
  std::sort(key.begin(), key.end());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = set_cache_.find(key);
  if (it != set_cache_.end()) return it->second;
  double value = inner_->Value(key);
  set_cache_.emplace(std::move(key), value);
  return value;
}

}  // namespace sievestream
