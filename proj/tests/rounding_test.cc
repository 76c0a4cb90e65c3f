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

#include <cmath>
#include <map>

#include <json.hpp>

#include "sievestream/extensions.h"
#include "sievestream/swap_rounding.h"
#include "test_util.h"

namespace sievestream {
namespace {

using testutil::RandomCut;
using testutil::SummarizeMean;

TEST_CASE("integral points pass through with an empty trace") {
  FractionalVector x;
  x.Set(2, 1.0);
  x.Set(6, 1.0);
  Rng rng(1);
  RoundingTrace trace;
  ElementSet s = SwapRound(x, 3, rng, &trace);
  CHECK(s == ElementSet{2, 6});
  CHECK(trace.steps.empty());
  CHECK(trace.final_set == s);
}

TEST_CASE("two half coordinates at k=1 round to either singleton") {
  FractionalVector x;
  x.Set(0, 0.5);
  x.Set(1, 0.5);
  Rng rng(5);
  int first = 0;
  const int runs = 100000;
  for (int t = 0; t < runs; ++t) {
    ElementSet s = SwapRound(x, 1, rng);
    REQUIRE(s.size() == 1);
    if (s[0] == 0) ++first;
  }
  double freq = static_cast<double>(first) / runs;
  CHECK(freq > 0.49);
  CHECK(freq < 0.51);
}

TEST_CASE("marginals are preserved per coordinate") {
  FractionalVector x;
  x.Set(0, 0.7);
  x.Set(1, 0.55);
  x.Set(3, 0.4);
  x.Set(4, 0.25);
  x.Set(8, 0.6);
  x.Set(9, 0.5);  // ||x||_1 = 3.0
  Rng rng(17);
  const int runs = 100000;
  std::map<ElementId, int> hits;
  for (int t = 0; t < runs; ++t) {
    for (ElementId u : SwapRound(x, 3, rng)) ++hits[u];
  }
  for (const auto& [u, coord] : x.coords()) {
    double freq = static_cast<double>(hits[u]) / runs;
    double se = std::sqrt(coord * (1.0 - coord) / runs);
    CAPTURE(u);
    CHECK(std::abs(freq - coord) <= 4.0 * se);
  }
}

TEST_CASE("expected value does not drop below the multilinear value") {
  auto f = RandomCut(10, 0.45, 21);
  FractionalVector x;
  x.Set(0, 0.8);
  x.Set(2, 0.6);
  x.Set(4, 0.55);
  x.Set(5, 0.45);
  x.Set(7, 0.35);
  x.Set(9, 0.25);  // ||x||_1 = 3.0 = k
  double target = MultilinearExact(*f, x);
  Rng rng(23);
  std::vector<double> values;
  values.reserve(100000);
  for (int t = 0; t < 100000; ++t) {
    values.push_back(f->Value(SwapRound(x, 3, rng)));
  }
  auto stats = SummarizeMean(values);
  CHECK(stats.mean >= target - 3.0 * stats.stderr_);
}

TEST_CASE("feasibility and support containment always hold") {
  Rng rng(29);
  for (int t = 0; t < 2000; ++t) {
    FractionalVector x;
    int k = 1 + rng.UniformInt(4);
    double budget = static_cast<double>(k);
    for (int u = 0; u < 12 && budget > 1e-6; ++u) {
      if (rng.Bernoulli(0.6)) {
        double v = std::min(budget, rng.Uniform());
        x.Set(u, v);
        budget -= v;
      }
    }
    ElementSet s = SwapRound(x, k, rng);
    CHECK(static_cast<int>(s.size()) <= k);
    for (ElementId u : s) CHECK(x.Get(u) > 0.0);
  }
}

TEST_CASE("infeasible mass is rejected") {
  FractionalVector x;
  x.Set(0, 0.9);
  x.Set(1, 0.9);
  x.Set(2, 0.9);
  Rng rng(31);
  CHECK_THROWS_AS(SwapRound(x, 2, rng), std::invalid_argument);
  CHECK_NOTHROW(SwapRound(x, 3, rng));
}

TEST_CASE("degenerate coordinates are zeroed before rounding") {
  FractionalVector x;
  x.Set(0, 1e-13);  // below the floor
  x.Set(1, 0.5);
  Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    for (ElementId u : SwapRound(x, 1, rng)) CHECK(u == 1);
  }
}

TEST_CASE("trace serializes to json") {
  FractionalVector x;
  x.Set(0, 0.5);
  x.Set(1, 0.5);
  x.Set(2, 0.75);
  Rng rng(41);
  RoundingTrace trace;
  ElementSet s = SwapRound(x, 2, rng, &trace);
  auto parsed = nlohmann::json::parse(trace.ToJsonString());
  CHECK(parsed.at("steps").size() == trace.steps.size());
  CHECK(parsed.at("final_set").get<ElementSet>() == s);
  CHECK(!trace.steps.empty());
  for (const auto& step : trace.steps) {
    CHECK(step.prob >= 0.0);
    CHECK(step.prob <= 1.0);
  }
}

}  // namespace
}  // namespace sievestream
