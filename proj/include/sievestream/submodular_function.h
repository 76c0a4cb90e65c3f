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
// Submodular objectives behind a uniform value-oracle interface.
//
// Every objective is pure: Value(S) depends only on S. The base class owns
// the ground-set metadata and the oracle-call counter. The counter is an
// atomic accumulator, so concurrent read-only evaluation is safe; there is
// no other shared mutable state.

#ifndef SIEVESTREAM_SUBMODULAR_FUNCTION_H_
#define SIEVESTREAM_SUBMODULAR_FUNCTION_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace sievestream {

using ElementId = int;

// A set of element ids, duplicate-free, in any order.
using ElementSet = std::vector<ElementId>;

// Elements are addressed by dense ids 0..n-1. Labels are optional
// (empty, or one per element).
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;
};

class SubmodularFunction {
 public:
  virtual ~SubmodularFunction() = default;

  SubmodularFunction(const SubmodularFunction&) = delete;
  SubmodularFunction& operator=(const SubmodularFunction&) = delete;

  // f(S). Counts one oracle call. Throws std::invalid_argument if an
  // element id is out of range.
  double Value(const ElementSet& set) const;

  // f(S) with S given as a bitmask; valid only when SupportsMask().
  // Counts one oracle call, and agrees bitwise with Value() on the same set.
  double ValueMask(std::uint64_t mask) const;

  // f(S u {u}) - f(S). Requires u not in S; costs two oracle calls.
  double Marginal(ElementId u, const ElementSet& set) const;

  int n() const { return ground_.n; }
  const GroundSet& ground() const { return ground_; }
  bool SupportsMask() const { return ground_.n <= 64; }

  std::int64_t Calls() const {
    return calls_.load(std::memory_order_relaxed);
  }
  void ResetCalls() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  explicit SubmodularFunction(GroundSet ground);

  // Evaluation on a bitmask; the primary path whenever n <= 64.
  virtual double EvaluateMask(std::uint64_t mask) const = 0;

  // Evaluation on an id list, used only when n > 64. The default
  // implementation rejects; objectives that support large ground sets
  // override it.
  virtual double EvaluateSet(const ElementSet& set) const;

 private:
  void CheckIds(const ElementSet& set) const;

  GroundSet ground_;
  mutable std::atomic<std::int64_t> calls_{0};
};

// Weighted coverage: f(S) = total weight of the union of the elements'
// cover sets. Monotone submodular.
class CoverageFunction : public SubmodularFunction {
 public:
  // universe_weights[j] >= 0; covers[i] lists universe indices covered by
  // element i. Throws std::invalid_argument on a negative weight or an
  // out-of-range universe index.
  CoverageFunction(std::vector<double> universe_weights,
                   std::vector<std::vector<int>> covers,
                   std::vector<std::string> labels = {});

  int universe_size() const { return static_cast<int>(weights_.size()); }

 protected:
  double EvaluateMask(std::uint64_t mask) const override;
  double EvaluateSet(const ElementSet& set) const override;

 private:
  double UnionWeightGeneric(const ElementSet& set) const;

  std::vector<double> weights_;
  std::vector<std::vector<int>> covers_;
  // Fast path when the universe fits in 64 bits: per-element cover masks
  // plus per-byte weight-sum tables.
  bool fast_ = false;
  std::vector<std::uint64_t> cover_masks_;
  std::vector<std::array<double, 256>> byte_weight_;
};

// Weighted undirected cut: f(S) = total weight of edges with exactly one
// endpoint in S. Non-negative, non-monotone, submodular.
class CutFunction : public SubmodularFunction {
 public:
  struct Edge {
    int a = 0;
    int b = 0;
    double w = 0.0;
  };

  // Throws std::invalid_argument on a negative weight, a self-loop, or an
  // out-of-range endpoint.
  CutFunction(int n, std::vector<Edge> edges,
              std::vector<std::string> labels = {});

  const std::vector<Edge>& edges() const { return edges_; }

 protected:
  double EvaluateMask(std::uint64_t mask) const override;
  double EvaluateSet(const ElementSet& set) const override;

 private:
  std::vector<Edge> edges_;
};

// Adversarial instance for the memory / approximation trade-off probe.
// Ground set: k-1 "u" elements (ids 0..k-2), h "v" elements
// (ids k-1..k+h-2) and a closing element "w" (id k+h-1);
// f(S) = |S| when w is absent and k + |S n {u elements}| when w is present.
// The optimum of size <= k is the u-elements plus w, of value 2k-1.
class HardInstanceFunction : public SubmodularFunction {
 public:
  // Throws std::invalid_argument unless k >= 1 and h >= 1.
  HardInstanceFunction(int k, int h);

  int k() const { return k_; }
  int h() const { return h_; }
  ElementId w_id() const { return k_ + h_ - 1; }

 protected:
  double EvaluateMask(std::uint64_t mask) const override;
  double EvaluateSet(const ElementSet& set) const override;

 private:
  int k_;
  int h_;
};

std::unique_ptr<SubmodularFunction> MakeHardInstance(int k, int h);

// Pass-through wrapper that caches evaluations. Off by default in the
// harness so that measured oracle-call counts match the algorithmic
// accounting; enable per-experiment when repeated evaluation dominates.
// Calls() on the wrapper counts requests; UniqueEvaluations() counts the
// misses that reached the wrapped function.
class MemoizingFunction : public SubmodularFunction {
 public:
  explicit MemoizingFunction(std::unique_ptr<SubmodularFunction> inner);

  std::int64_t UniqueEvaluations() const { return inner_->Calls(); }

 protected:
  double EvaluateMask(std::uint64_t mask) const override;
  double EvaluateSet(const ElementSet& set) const override;

 private:
  std::unique_ptr<SubmodularFunction> inner_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, double> mask_cache_;
  mutable std::map<ElementSet, double> set_cache_;
};

}  // namespace sievestream

#endif  // SIEVESTREAM_SUBMODULAR_FUNCTION_H_
