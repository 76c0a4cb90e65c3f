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

#include <doctest.h>

#include <atomic>
#include <thread>

#include "sievestream/submodular_function.h"
#include "sievestream/validation.h"
#include "test_util.h"

namespace sievestream {
namespace {

using testutil::RandomInstance;
using testutil::SpecCoverage;
using testutil::UnitEdge;
using testutil::UnitTriangle;

TEST_CASE("coverage values") {
  auto f = SpecCoverage();
  CHECK(f->Value({0, 1}) == 3.0);
  CHECK(f->Value({0}) == 2.0);
  CHECK(f->Value({}) == 0.0);
  CHECK(f->Marginal(1, {0}) == 1.0);  // B adds only universe point 3
}

TEST_CASE("coverage with empty covers is identically zero") {
  CoverageFunction f({1.0, 2.0}, {{}, {}, {}});
  CHECK(f.Value({0, 1, 2}) == 0.0);
  CHECK(f.Value({}) == 0.0);
}

TEST_CASE("cut values") {
  auto edge = UnitEdge();
  CHECK(edge->Value({0, 1}) == 0.0);  // both endpoints inside
  CHECK(edge->Value({0}) == 1.0);
  CHECK(edge->Marginal(1, {0}) == -1.0);  // closing the edge removes the cut

  auto triangle = UnitTriangle();
  CHECK(triangle->Value({0}) == 2.0);
  CHECK(triangle->Value({0, 1}) == 2.0);
  CHECK(triangle->Value({0, 1, 2}) == 0.0);
  CHECK(triangle->Value({}) == 0.0);
}

TEST_CASE("hard instance closed form") {
  HardInstanceFunction f(3, 2);
  // ids: u1=0, u2=1, v1=2, v2=3, w=4
  CHECK(f.n() == 5);
  CHECK(f.Value({0, 1, 4}) == 5.0);  // the optimum, value 2k-1
  CHECK(f.Value({2, 3}) == 2.0);
  CHECK(f.Value({}) == 0.0);
  CHECK(f.Marginal(4, {}) == 3.0);  // f({w}) - f(empty) = k
  CHECK(f.ground().labels.back() == "w");

  std::string detail;
  CHECK(CheckHardClosedForm(f, &detail));
  HardInstanceFunction big(4, 10);  // k + h = 14: exhaustive closed form
  CHECK(CheckHardClosedForm(big, &detail));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(HardInstanceFunction(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(HardInstanceFunction(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(CoverageFunction({-1.0}, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverageFunction({1.0}, {{2}}), std::invalid_argument);
  CHECK_THROWS_AS(CutFunction(2, {{0, 1, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(CutFunction(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CutFunction(2, {{0, 5, 1.0}}), std::invalid_argument);
}

TEST_CASE("evaluation errors") {
  auto f = SpecCoverage();
  CHECK_THROWS_AS(f->Value({7}), std::invalid_argument);
  CHECK_THROWS_AS(f->Value({-1}), std::invalid_argument);
  CHECK_THROWS_AS(f->Marginal(0, {0, 1}), std::invalid_argument);  // u in S
}

TEST_CASE("call accounting is exact") {
  auto f = SpecCoverage();
  f->ResetCalls();
  f->Value({0});
  f->Value({0, 1});
  f->ValueMask(0b01);
  CHECK(f->Calls() == 3);
  f->Marginal(1, {0});  // two calls
  CHECK(f->Calls() == 5);
}

TEST_CASE("call counter is safe under concurrent evaluation") {
  auto f = UnitTriangle();
  f->ResetCalls();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&f] {
      for (int i = 0; i < 1000; ++i) f->Value({0, 1});
    });
  }
  for (auto& t : threads) t.join();
  CHECK(f->Calls() == 4000);
}

TEST_CASE("oracle properties hold exhaustively on small instances") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto f = RandomInstance(8 + static_cast<int>(seed % 3), seed);
    ValidationResult result = ValidateFunction(*f);
    CAPTURE(seed);
    CAPTURE(result.detail);
    CHECK(result.exhaustive);
    CHECK(result.non_negative);
    CHECK(result.submodular);
  }
  ValidationResult hard = ValidateFunction(HardInstanceFunction(4, 6));
  CHECK(hard.ok());
}

TEST_CASE("mask and set evaluation agree") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto f = RandomInstance(10, seed);
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
      std::uint64_t mask = rng.Next() & ((1u << 10) - 1);
      ElementSet set;
      for (int u = 0; u < 10; ++u) {
        if (mask >> u & 1) set.push_back(u);
      }
      CHECK(f->Value(set) == f->ValueMask(mask));
    }
  }
}

TEST_CASE("generic path handles ground sets beyond 64 elements") {
  // 70 disjoint singleton covers, weight = id.
  std::vector<double> weights(70);
  std::vector<std::vector<int>> covers(70);
  for (int i = 0; i < 70; ++i) {
    weights[i] = static_cast<double>(i);
    covers[i] = {i};
  }
  CoverageFunction f(std::move(weights), std::move(covers));
  CHECK_FALSE(f.SupportsMask());
  CHECK(f.Value({69, 1}) == 70.0);
  CHECK_THROWS_AS(f.ValueMask(1), std::invalid_argument);

  std::vector<CutFunction::Edge> edges;
  for (int i = 0; i + 1 < 70; ++i) edges.push_back({i, i + 1, 1.0});
  CutFunction path(70, std::move(edges));
  CHECK(path.Value({0}) == 1.0);
  CHECK(path.Value({1}) == 2.0);
  CHECK(path.Value({0, 1}) == 1.0);
}

TEST_CASE("memoization caches values without changing them") {
  auto memo = std::make_unique<MemoizingFunction>(UnitTriangle());
  double v1 = memo->Value({0, 1});
  double v2 = memo->Value({1, 0});  // same set, any order
  CHECK(v1 == 2.0);
  CHECK(v2 == 2.0);
  CHECK(memo->Calls() == 2);              // requests
  CHECK(memo->UniqueEvaluations() == 1);  // one miss
}

}  // namespace
}  // namespace sievestream
