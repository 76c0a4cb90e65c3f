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
// Oracle property checks: non-negativity and the diminishing-returns
// inequality, exhaustively for small ground sets and sampled beyond.

#ifndef SIEVESTREAM_VALIDATION_H_
#define SIEVESTREAM_VALIDATION_H_

#include <cstdint>
#include <string>

#include "sievestream/submodular_function.h"

namespace sievestream {

struct ValidationOptions {
  int exhaustive_n_cap = 16;       // full 2^n table up to this size
  double tolerance = 1e-9;         // absorbs floating-point rounding
  std::int64_t sampled_checks = 100000;  // used when n exceeds the cap
  std::uint64_t seed = 1;
};

struct ValidationResult {
  bool non_negative = true;
  bool submodular = true;
  bool exhaustive = false;
  std::string detail;  // first violation, if any

  bool ok() const { return non_negative && submodular; }
};

// Checks f(S) >= 0 for all S and, via the equivalent pairwise condition
// f(S u {i}) + f(S u {j}) >= f(S u {i,j}) + f(S), submodularity.
ValidationResult ValidateFunction(const SubmodularFunction& f,
                                  const ValidationOptions& options = {});

// Verifies a hard instance against its closed form on every subset
// (requires k + h <= exhaustive cap).
bool CheckHardClosedForm(const HardInstanceFunction& f, std::string* detail);

}  // namespace sievestream

#endif  // SIEVESTREAM_VALIDATION_H_
