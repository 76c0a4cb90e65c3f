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

#include "sievestream/errors.h"
#include "sievestream/extensions.h"
#include "sievestream/offline.h"
#include "test_util.h"

namespace sievestream {
namespace {

using testutil::MaskBruteForce;
using testutil::RandomCoverage;
using testutil::RandomInstance;
using testutil::RandomVector;
using testutil::ReferenceMultilinear;
using testutil::SpecCoverage;
using testutil::UnitEdge;

TEST_CASE("fractional vector basics") {
  FractionalVector x;
  x.Set(3, 0.5);
  x.Set(1, 0.25);
  CHECK(x.Get(3) == 0.5);
  CHECK(x.Get(2) == 0.0);
  CHECK(x.SupportSize() == 2);
  CHECK(x.L1() == 0.75);
  x.Set(3, 0.0);  // erases
  CHECK(x.SupportSize() == 1);
  CHECK(x.Support() == ElementSet{1});
  CHECK_THROWS_AS(x.Set(0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(x.Set(0, -0.1), std::invalid_argument);
}

TEST_CASE("fractional vector l1 cache stays consistent") {
  FractionalVector x;
  Rng rng(7);
  for (int t = 0; t < 5000; ++t) {
    x.Set(rng.UniformInt(40), rng.Uniform());
  }
  CHECK(std::abs(x.L1() - x.RecomputeL1()) <= 1e-12);
}

TEST_CASE("sample set degenerate distributions") {
  Rng rng(11);
  FractionalVector zeros;
  for (int t = 0; t < 100; ++t) CHECK(SampleSet(zeros, rng).empty());

  FractionalVector integral;
  integral.Set(2, 1.0);
  integral.Set(5, 1.0);
  for (int t = 0; t < 100; ++t) {
    CHECK(SampleSet(integral, rng) == ElementSet{2, 5});
  }
}

TEST_CASE("sample set inclusion frequency") {
  Rng rng(13);
  FractionalVector x;
  x.Set(4, 0.5);
  int hits = 0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    hits += SampleSet(x, rng).empty() ? 0 : 1;
  }
  double freq = static_cast<double>(hits) / draws;
  CHECK(freq > 0.49);
  CHECK(freq < 0.51);
}

TEST_CASE("multilinear agrees with hand-computed examples") {
  auto coverage = SpecCoverage();
  FractionalVector x;
  x.Set(0, 0.6);
  x.Set(1, 0.3);
  // 0.18*3 + 0.42*2 + 0.12*2 + 0.28*0
  CHECK(std::abs(MultilinearExact(*coverage, x) - 1.62) <= 1e-12);

  auto edge = UnitEdge();
  FractionalVector half;
  half.Set(0, 0.5);
  half.Set(1, 0.5);
  CHECK(MultilinearExact(*edge, half) == 0.5);
}

TEST_CASE("multilinear equals the full-ground reference") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto f = RandomInstance(10, seed);
    Rng rng(seed * 17);
    for (int t = 0; t < 20; ++t) {
      FractionalVector x = RandomVector(10, 10, 1.0, rng);
      double got = MultilinearExact(*f, x);
      double want = ReferenceMultilinear(*f, x);
      CHECK(std::abs(got - want) <= 1e-12);
    }
  }
}

TEST_CASE("multilinear and lovasz agree with f on vertices exactly") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto f = RandomInstance(8, seed);
    for (std::uint64_t mask = 0; mask < (1u << 8); ++mask) {
      FractionalVector x;
      ElementSet set;
      for (int u = 0; u < 8; ++u) {
        if (mask >> u & 1) {
          x.Set(u, 1.0);
          set.push_back(u);
        }
      }
      double fv = f->Value(set);
      CHECK(MultilinearExact(*f, x) == fv);
      CHECK(LovaszExact(*f, x) == fv);
    }
  }
}

TEST_CASE("multilinear capacity error directs to the estimator") {
  auto f = RandomCoverage(30, 10, 0.3, 1);
  FractionalVector x;
  for (int u = 0; u < 21; ++u) x.Set(u, 0.5);
  CHECK_THROWS_AS(MultilinearExact(*f, x), CapacityError);
  CHECK_THROWS_AS(MultilinearExact(*f, x, 20), CapacityError);
  CHECK_NOTHROW(MultilinearExact(*f, x, 21));
  CHECK_THROWS_AS(PartialDerivativeExact(*f, x, 25, 21), CapacityError);
  CHECK_NOTHROW(PartialDerivativeExact(*f, x, 25, 22));
}

TEST_CASE("derivative hand-computed examples") {
  auto edge = UnitEdge();
  FractionalVector x;
  x.Set(1, 0.5);  // x_b = 0.5
  // dF/dx_a = (1 - x_b) - x_b edge weightings: F(1, 0.5) - F(0, 0.5) = 0.
  CHECK(PartialDerivativeExact(*edge, x, 0) == 0.0);
  double ref = ReferenceMultilinear(*edge, [] {
                 FractionalVector j;
                 j.Set(0, 1.0);
                 j.Set(1, 0.5);
                 return j;
               }()) -
               ReferenceMultilinear(*edge, [] {
                 FractionalVector m;
                 m.Set(1, 0.5);
                 return m;
               }());
  CHECK(PartialDerivativeExact(*edge, x, 0) == ref);

  FractionalVector quarter;
  quarter.Set(1, 0.25);
  CHECK(PartialDerivativeExact(*edge, quarter, 0) == 0.5);

  // At the origin the derivative is the singleton marginal.
  auto coverage = SpecCoverage();
  FractionalVector zero;
  CHECK(PartialDerivativeExact(*coverage, zero, 1) ==
        coverage->Value({1}) - coverage->Value({}));
}

TEST_CASE("derivative of a monotone objective is non-negative") {
  auto f = RandomCoverage(9, 15, 0.3, 3);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    FractionalVector x = RandomVector(9, 9, 1.0, rng);
    int u = rng.UniformInt(9);
    CHECK(PartialDerivativeExact(*f, x, u) >= 0.0);
  }
}

TEST_CASE("derivative identity vs the two-evaluation route is exact") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto f = RandomInstance(10, seed);
    Rng rng(seed * 31);
    for (int t = 0; t < 25; ++t) {
      FractionalVector x = RandomVector(10, 8, 1.0, rng);
      int u = rng.UniformInt(10);
      FractionalVector join = x;
      join.Set(u, 1.0);
      FractionalVector meet = x;
      meet.Set(u, 0.0);
      double direct = PartialDerivativeExact(*f, x, u);
      double two_route = MultilinearExact(*f, join) - MultilinearExact(*f, meet);
      CHECK(direct == two_route);
    }
  }
}

TEST_CASE("lovasz hand-computed example and lower bound") {
  auto coverage = SpecCoverage();
  FractionalVector x;
  x.Set(0, 0.6);
  x.Set(1, 0.3);
  // 0.3*3 + 0.3*2 + 0.4*0
  CHECK(std::abs(LovaszExact(*coverage, x) - 1.5) <= 1e-12);
  CHECK(LovaszExact(*coverage, x) <= MultilinearExact(*coverage, x));

  // Call cost: at most |supp| + 1 evaluations.
  coverage->ResetCalls();
  LovaszExact(*coverage, x);
  CHECK(coverage->Calls() <= 3);
}

TEST_CASE("lovasz lower-bounds the multilinear extension") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto f = RandomInstance(11, seed);
    Rng rng(seed * 101);
    for (int t = 0; t < 100; ++t) {
      FractionalVector x = RandomVector(11, 11, 1.0, rng);
      CHECK(MultilinearExact(*f, x) >= LovaszExact(*f, x) - 1e-9);
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("zeroing part of a vector loses at most a 1-p factor") {
  // F(x + y) >= (1 - p) F(x) for disjoint supports with y <= p.
  for (double p : {0.1, 0.24, 0.5}) {
    Rng rng(static_cast<std::uint64_t>(p * 1000));
    for (int t = 0; t < 60; ++t) {
      auto f = RandomInstance(10, 100 + t % 7);
      FractionalVector x, sum;
      for (int u = 0; u < 10; u += 2) {
        double v = rng.Uniform();
        x.Set(u, v);
        sum.Set(u, v);
      }
      for (int u = 1; u < 10; u += 2) sum.Set(u, p * rng.Uniform());
      CHECK(MultilinearExact(*f, sum) >=
            (1.0 - p) * MultilinearExact(*f, x) - 1e-9);
    }
  }
}

TEST_CASE("sample count matches the formula") {
  // ceil(4800 * (1/p + 1)^2 k^2 / [eps(1-eps)]^2 * ln(80 i^2 / eps)),
  // recomputed here with independent grouping.
  std::int64_t got = SampleCount(0.5, 1, 0.5, 1);
  double independent =
      std::ceil((4800.0 * 9.0 / 0.0625) * std::log(160.0));
  CHECK(got == static_cast<std::int64_t>(independent));
  CHECK(got == 3507961);

  CHECK(SampleCount(0.24, 10, 1e-4, 1) > std::int64_t{1000000000000000});

  CHECK(SampleCount(0.3, 2, 0.25, 2) >= SampleCount(0.3, 2, 0.25, 1));
  CHECK(SampleCount(0.3, 2, 0.25, 100) >= SampleCount(0.3, 2, 0.25, 10));

  CHECK_THROWS_AS(SampleCount(0.0, 1, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(SampleCount(1.0, 1, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(SampleCount(0.5, 0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(SampleCount(0.5, 1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SampleCount(0.5, 1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("estimator is exact on degenerate distributions") {
  auto coverage = SpecCoverage();
  FractionalVector zero;
  double marginal = coverage->Value({0}) - coverage->Value({});
  CHECK(EstimatePartialDerivative(*coverage, zero, 0, 1, 99) == marginal);
  CHECK(EstimatePartialDerivative(*coverage, zero, 0, 50, 123) == marginal);

  FractionalVector one_v;
  one_v.Set(1, 1.0);
  double expected = coverage->Value({0, 1}) - coverage->Value({1});
  CHECK(EstimatePartialDerivative(*coverage, one_v, 0, 25, 7) == expected);
}

TEST_CASE("estimator is reproducible and reports stats") {
  auto f = RandomCoverage(8, 12, 0.4, 2);
  Rng rng(3);
  FractionalVector x = RandomVector(8, 6, 0.8, rng);
  EstimatorStats stats;
  double a = EstimatePartialDerivative(*f, x, 7, 500, 42, &stats);
  double b = EstimatePartialDerivative(*f, x, 7, 500, 42);
  CHECK(a == b);
  CHECK(stats.samples == 500);
  CHECK(stats.variance >= 0.0);
}

TEST_CASE("estimator is unbiased within three standard errors") {
  auto f = RandomCoverage(8, 12, 0.4, 5);
  FractionalVector x;
  for (int u = 0; u < 7; ++u) x.Set(u, 0.1 + 0.1 * u);
  double exact = PartialDerivativeExact(*f, x, 7);
  EstimatorStats stats;
  const std::int64_t draws = 100000;
  double estimate = EstimatePartialDerivative(*f, x, 7, draws, 2026, &stats);
  double se = std::sqrt(stats.variance / static_cast<double>(draws));
  CHECK(std::abs(estimate - exact) <= 3.0 * se + 1e-12);
}

TEST_CASE("estimator concentration at ten thousand samples") {
  auto f = RandomCoverage(8, 12, 0.4, 8);
  FractionalVector x;
  for (int u = 0; u < 6; ++u) x.Set(u, 0.15 * (u % 3 + 1));
  double exact = PartialDerivativeExact(*f, x, 7);
  double f_opt = MaskBruteForce(*f, 3).second;
  int failures = 0;
  for (int rep = 0; rep < 100; ++rep) {
    double estimate = EstimatePartialDerivative(*f, x, 7, 10000, 500 + rep);
    if (std::abs(estimate - exact) > 0.05 * f_opt) ++failures;
  }
  CHECK(failures <= 1);  // >= 99% of repetitions inside the band
}

}  // namespace
}  // namespace sievestream
