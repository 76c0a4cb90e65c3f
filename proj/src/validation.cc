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

#include "sievestream/validation.h"

#include <bit>
#include <cmath>
#include <vector>

#include "sievestream/random.h"

namespace sievestream {

namespace {

std::string MaskToString(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    if (!first) s += ",";
    s += std::to_string(std::countr_zero(m));
    first = false;
  }
  return s + "}";
}

ValidationResult ValidateExhaustive(const SubmodularFunction& f,
                                    const ValidationOptions& options) {
  ValidationResult result;
  result.exhaustive = true;
  const int n = f.n();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<double> table(subsets);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    table[mask] = f.ValueMask(mask);
    if (table[mask] < 0.0 && result.non_negative) {
      result.non_negative = false;
      result.detail = "f" + MaskToString(mask) + " < 0";
    }
  }
  for (std::uint64_t mask = 0; mask < subsets && result.submodular; ++mask) {
    for (int i = 0; i < n && result.submodular; ++i) {
      if (mask >> i & 1) continue;
      for (int j = i + 1; j < n; ++j) {
        if (mask >> j & 1) continue;
        const std::uint64_t bi = std::uint64_t{1} << i;
        const std::uint64_t bj = std::uint64_t{1} << j;
        double lhs = table[mask | bi] + table[mask | bj];
        double rhs = table[mask | bi | bj] + table[mask];
        if (lhs < rhs - options.tolerance) {
          result.submodular = false;
          result.detail = "pairwise diminishing returns fails at " +
                          MaskToString(mask) + " with elements " +
                          std::to_string(i) + "," + std::to_string(j);
          break;
        }
      }
    }
  }
  return result;
}

ValidationResult ValidateSampled(const SubmodularFunction& f,
                                 const ValidationOptions& options) {
  ValidationResult result;
  result.exhaustive = false;
  const int n = f.n();
  Rng rng(options.seed);
  ElementSet base, with_i, with_j, with_ij;
  for (std::int64_t t = 0; t < options.sampled_checks; ++t) {
    base.clear();
    for (int u = 0; u < n; ++u) {
      if (rng.Bernoulli(0.3)) base.push_back(u);
    }
    int i = rng.UniformInt(n);
    int j = rng.UniformInt(n);
    if (i == j) continue;
    std::erase(base, i);
    std::erase(base, j);
    with_i = base;
    with_i.push_back(i);
    with_j = base;
    with_j.push_back(j);
    with_ij = with_i;
    with_ij.push_back(j);
    double f_base = f.Value(base);
    if (f_base < 0.0) {
      result.non_negative = false;
      result.detail = "sampled set has negative value";
      break;
    }
    double lhs = f.Value(with_i) + f.Value(with_j);
    double rhs = f.Value(with_ij) + f_base;
    if (lhs < rhs - options.tolerance) {
      result.submodular = false;
      result.detail = "sampled diminishing-returns check failed";
      break;
    }
  }
  return result;
}

}  // namespace

ValidationResult ValidateFunction(const SubmodularFunction& f,
                                  const ValidationOptions& options) {
  if (f.n() <= options.exhaustive_n_cap && f.SupportsMask()) {
    return ValidateExhaustive(f, options);
  }
  return ValidateSampled(f, options);
}

bool CheckHardClosedForm(const HardInstanceFunction& f, std::string* detail) {
  const int n = f.n();
  if (n > 20) {
    if (detail != nullptr) *detail = "instance too large for exhaustive check";
    return false;
  }
  const std::uint64_t u_mask = (std::uint64_t{1} << (f.k() - 1)) - 1;
  const std::uint64_t w_bit = std::uint64_t{1} << f.w_id();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double expected = (mask & w_bit)
                          ? static_cast<double>(f.k() +
                                                std::popcount(mask & u_mask))
                          : static_cast<double>(std::popcount(mask));
    if (f.ValueMask(mask) != expected) {
      if (detail != nullptr) {
        *detail = "closed form mismatch at " + MaskToString(mask);
      }
      return false;
    }
  }
  return true;
}

}  // namespace sievestream
