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

#include <map>

#include "sievestream/errors.h"
#include "sievestream/offline.h"
#include "test_util.h"

namespace sievestream {
namespace {

using testutil::MaskBruteForce;
using testutil::Modular;
using testutil::RandomInstance;
using testutil::UnitTriangle;

ElementSet FullGround(int n) {
  ElementSet ground(n);
  for (int i = 0; i < n; ++i) ground[i] = i;
  return ground;
}

TEST_CASE("brute force on the hard instance finds the optimum") {
  HardInstanceFunction f(3, 2);
  OfflineSolution best = BruteForce(f, FullGround(5), 3);
  CHECK(best.value == 5.0);  // 2k - 1
  CHECK(best.set == ElementSet{0, 1, 4});
}

TEST_CASE("brute force basics") {
  auto triangle = UnitTriangle();
  OfflineSolution best = BruteForce(*triangle, FullGround(3), 2);
  CHECK(best.value == 2.0);
  CHECK(best.set == ElementSet{0});  // lexicographically smallest maximizer

  CHECK(BruteForce(*triangle, FullGround(3), 0).set.empty());
  CHECK(BruteForce(*triangle, FullGround(3), 0).value == 0.0);
  CHECK(BruteForce(*triangle, {}, 3).set.empty());
}

TEST_CASE("brute force tie-break is lexicographic") {
  auto equal = Modular({2.0, 2.0, 2.0});
  CHECK(BruteForce(*equal, FullGround(3), 1).set == ElementSet{0});
  CHECK(BruteForce(*equal, FullGround(3), 2).set == ElementSet{0, 1});
}

TEST_CASE("brute force respects the work cap") {
  auto f = Modular(std::vector<double>(26, 1.0));
  CHECK_THROWS_AS(BruteForce(*f, FullGround(26), 13), CapacityError);
  CHECK_NOTHROW(BruteForce(*f, FullGround(26), 2));
}

TEST_CASE("brute force agrees with an independent enumerator") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int n = 6 + static_cast<int>(seed % 5);
    int k = 1 + static_cast<int>(seed % 4);
    auto f = RandomInstance(n, seed);
    OfflineSolution lib = BruteForce(*f, FullGround(n), k);
    auto [ref_set, ref_value] = MaskBruteForce(*f, k);
    CAPTURE(seed);
    CHECK(lib.value == ref_value);
    CHECK(lib.set == ref_set);
  }
}

TEST_CASE("random greedy on modular weights follows the case analysis") {
  // Weights {3,2,1}, k=2. Round one picks uniformly from {3,2}; round two
  // picks uniformly from the two largest remaining marginals. Outcomes:
  // value 5 w.p. 1/2, value 4 w.p. 1/4 (3 then 1), value 3 w.p. 1/4
  // (2 then 1).
  auto f = Modular({3.0, 2.0, 1.0});
  Rng rng(43);
  std::map<double, int> outcomes;
  const int runs = 40000;
  for (int t = 0; t < runs; ++t) {
    OfflineSolution got = RandomGreedy(*f, FullGround(3), 2, rng);
    CHECK(got.set.size() == 2);
    ++outcomes[got.value];
  }
  CHECK(outcomes.size() == 3);
  CHECK(std::abs(outcomes[5.0] / static_cast<double>(runs) - 0.5) < 0.02);
  CHECK(std::abs(outcomes[4.0] / static_cast<double>(runs) - 0.25) < 0.02);
  CHECK(std::abs(outcomes[3.0] / static_cast<double>(runs) - 0.25) < 0.02);
}

TEST_CASE("random greedy always returns a feasible non-negative set") {
  Rng rng(47);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto f = RandomInstance(9, seed);
    int k = 1 + static_cast<int>(seed % 9);  // includes k >= |ground|
    OfflineSolution got = RandomGreedy(*f, FullGround(9), k, rng);
    CHECK(static_cast<int>(got.set.size()) <= k);
    CHECK(got.value >= 0.0);
  }
  CHECK_THROWS_AS(RandomGreedy(*RandomInstance(5, 1), FullGround(5), 0, rng),
                  std::invalid_argument);
}

TEST_CASE("random greedy ratio and brute-force dominance") {
  // Ground sets of size <= k / 0.24; the mean ratio over many runs should
  // clear the configured offline ratio 0.460675.
  Rng rng(53);
  double ratio_sum = 0.0;
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int n = 12;  // <= 3 / 0.24 = 12.5
    int k = 3;
    auto f = RandomInstance(n, seed);
    OfflineSolution opt = BruteForce(*f, FullGround(n), k);
    if (opt.value <= 0.0) continue;
    for (int t = 0; t < 500; ++t) {
      OfflineSolution got = RandomGreedy(*f, FullGround(n), k, rng);
      CHECK(opt.value >= got.value);  // brute force dominates every run
      ratio_sum += got.value / opt.value;
      ++runs;
    }
  }
  REQUIRE(runs >= 10000);
  CHECK(ratio_sum / runs >= 0.46);
}

}  // namespace
}  // namespace sievestream
