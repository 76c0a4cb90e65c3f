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

#ifndef SIEVESTREAM_FRACTIONAL_VECTOR_H_
#define SIEVESTREAM_FRACTIONAL_VECTOR_H_

#include <map>

#include "sievestream/submodular_function.h"

namespace sievestream {

// Sparse vector in [0,1]^N with a cached l1 norm. Only nonzero coordinates
// are stored; iteration over coords() is in ascending id order, which the
// samplers rely on for reproducibility.
class FractionalVector {
 public:
  FractionalVector() = default;

  double Get(ElementId u) const {
    auto it = coords_.find(u);
    return it == coords_.end() ? 0.0 : it->second;
  }

  // value must be in [0,1]; setting 0 erases the coordinate.
  void Set(ElementId u, double value);

  double L1() const { return l1_; }

  // Rebases the cached norm to a value the caller knows exactly (e.g. the
  // cardinality bound once a clamped add saturates it). The stated value
  // must agree with the stored coordinates to within 1e-9.
  void RestateL1(double l1);

  // Freshly summed norm, for cache-consistency checks.
  double RecomputeL1() const;

  int SupportSize() const { return static_cast<int>(coords_.size()); }
  bool Empty() const { return coords_.empty(); }

  ElementSet Support() const;

  const std::map<ElementId, double>& coords() const { return coords_; }

  friend bool operator==(const FractionalVector& a,
                         const FractionalVector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::map<ElementId, double> coords_;
  double l1_ = 0.0;
};

}  // namespace sievestream

#endif  // SIEVESTREAM_FRACTIONAL_VECTOR_H_
