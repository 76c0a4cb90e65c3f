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

#include "sievestream/fractional_vector.h"

#include <cmath>
#include <stdexcept>

namespace sievestream {

void FractionalVector::Set(ElementId u, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("coordinate must lie in [0, 1]");
  }
  auto it = coords_.find(u);
  double old = it == coords_.end() ? 0.0 : it->second;
  if (value == 0.0) {
    if (it != coords_.end()) coords_.erase(it);
  } else if (it == coords_.end()) {
    coords_.emplace(u, value);
  } else {
    it->second = value;
  }
  l1_ += value - old;
}

void FractionalVector::RestateL1(double l1) {
  if (std::abs(l1 - RecomputeL1()) > 1e-9) {
    throw std::logic_error("restated l1 norm disagrees with coordinates");
  }
  l1_ = l1;
}

double FractionalVector::RecomputeL1() const {
  double total = 0.0;
  for (const auto& [id, value] : coords_) total += value;
  return total;
}

ElementSet FractionalVector::Support() const {
  ElementSet support;
  support.reserve(coords_.size());
  for (const auto& [id, value] : coords_) support.push_back(id);
  return support;
}

}  // namespace sievestream
