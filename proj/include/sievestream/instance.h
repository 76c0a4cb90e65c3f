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
// Instance files: a JSON object with a "type" of "coverage", "cut" or
// "hard", the declared n and k, an arrival order, and the per-type payload.
// See README.md for the documented schema and examples.

#ifndef SIEVESTREAM_INSTANCE_H_
#define SIEVESTREAM_INSTANCE_H_

#include <memory>
#include <string>
#include <vector>

#include "sievestream/submodular_function.h"

namespace sievestream {

enum class InstanceKind { kCoverage, kCut, kHard };

std::string InstanceKindName(InstanceKind kind);

struct CoverageData {
  std::vector<double> universe_weights;
  std::vector<std::vector<int>> covers;
};

struct CutData {
  std::vector<CutFunction::Edge> edges;
};

struct HardData {
  int k = 0;
  int h = 0;
};

struct Instance {
  std::string name;
  InstanceKind kind = InstanceKind::kCoverage;
  int n = 0;
  int k = 0;  // 0 = unspecified; experiments fall back to their own k
  std::vector<ElementId> order;  // arrival order; permutation of 0..n-1

  CoverageData coverage;
  CutData cut;
  HardData hard;

  std::unique_ptr<SubmodularFunction> MakeFunction() const;
};

// Serialization is deterministic: the same Instance always produces the
// same bytes.
std::string InstanceToJsonString(const Instance& instance);
Instance InstanceFromJsonString(const std::string& text);

Instance LoadInstance(const std::string& path);
void SaveInstance(const Instance& instance, const std::string& path);

}  // namespace sievestream

#endif  // SIEVESTREAM_INSTANCE_H_
