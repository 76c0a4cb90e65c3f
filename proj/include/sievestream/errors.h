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

#ifndef SIEVESTREAM_ERRORS_H_
#define SIEVESTREAM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sievestream {

// Thrown when an exact computation would exceed its configured work cap
// (exact multilinear evaluation, brute-force search). Callers either pick a
// larger cap or fall back to a sampled / bounded alternative.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace sievestream

#endif  // SIEVESTREAM_ERRORS_H_
