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

#include "sievestream/swap_rounding.h"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace sievestream {

namespace {

struct WorkingCoord {
  ElementId id;
  double value;
};

bool Fractional(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

std::string RoundingTrace::ToJsonString() const {
  nlohmann::ordered_json j;
  j["steps"] = nlohmann::ordered_json::array();
  for (const RoundingStep& s : steps) {
    j["steps"].push_back({{"i", s.i},
                          {"j", s.j},
                          {"survivor", s.survivor},
                          {"prob", s.prob}});
  }
  j["final_set"] = final_set;
  return j.dump();
}

ElementSet SwapRound(const FractionalVector& x, int k, Rng& rng,
                     RoundingTrace* trace) {
  if (k < 0) throw std::invalid_argument("cardinality bound must be >= 0");
  if (x.L1() > static_cast<double>(k) + 1e-9) {
    throw std::invalid_argument("swap rounding requires ||x||_1 <= k");
  }
  if (trace != nullptr) *trace = RoundingTrace{};

  std::vector<WorkingCoord> coords;
  coords.reserve(x.coords().size());
  for (const auto& [id, value] : x.coords()) {
    if (value > kRoundingCoordinateFloor) coords.push_back({id, value});
  }

  // Indices (into coords, ascending id) of the still-fractional entries.
  std::vector<int> fractional;
  for (int i = 0; i < static_cast<int>(coords.size()); ++i) {
    if (Fractional(coords[i].value)) fractional.push_back(i);
  }

  auto record = [&](ElementId ci, ElementId cj, ElementId survivor,
                    double prob) {
    if (trace != nullptr) trace->steps.push_back({ci, cj, survivor, prob});
  };

  while (fractional.size() >= 2) {
    int ia = fractional[0];
    int ib = fractional[1];
    double a = coords[ia].value;
    double b = coords[ib].value;
    if (a + b <= 1.0) {
      // Merge the pair's mass into one coordinate; the other drops to 0.
      double keep_first = a / (a + b);
      if (rng.Uniform() < keep_first) {
        coords[ia].value = a + b;
        coords[ib].value = 0.0;
        record(coords[ia].id, coords[ib].id, coords[ia].id, keep_first);
      } else {
        coords[ib].value = a + b;
        coords[ia].value = 0.0;
        record(coords[ia].id, coords[ib].id, coords[ib].id, 1.0 - keep_first);
      }
    } else {
      // Push one coordinate to 1; the other keeps the excess a + b - 1.
      double first_to_one = (1.0 - b) / ((1.0 - a) + (1.0 - b));
      if (rng.Uniform() < first_to_one) {
        coords[ia].value = 1.0;
        coords[ib].value = a + b - 1.0;
        record(coords[ia].id, coords[ib].id, coords[ia].id, first_to_one);
      } else {
        coords[ib].value = 1.0;
        coords[ia].value = a + b - 1.0;
        record(coords[ia].id, coords[ib].id, coords[ib].id,
               1.0 - first_to_one);
      }
    }
    fractional.erase(std::remove_if(fractional.begin(), fractional.end(),
                                    [&](int i) {
                                      return !Fractional(coords[i].value);
                                    }),
                     fractional.end());
  }

  if (fractional.size() == 1) {
    int ir = fractional[0];
    double r = coords[ir].value;
    bool keep = rng.Uniform() < r;
    // Inputs within the 1e-9 feasibility slack could otherwise round up to
    // k + 1 elements; force the residual down in that measure-zero case.
    int ones = static_cast<int>(
        std::count_if(coords.begin(), coords.end(),
                      [](const WorkingCoord& c) { return c.value == 1.0; }));
    if (keep && ones >= k) keep = false;
    coords[ir].value = keep ? 1.0 : 0.0;
    record(coords[ir].id, -1, keep ? coords[ir].id : -1, keep ? r : 1.0 - r);
  }

  ElementSet result;
  for (const WorkingCoord& c : coords) {
    if (c.value == 1.0) result.push_back(c.id);
  }
  if (static_cast<int>(result.size()) > k) {
    throw std::logic_error("swap rounding produced an infeasible set");
  }
  if (trace != nullptr) trace->final_set = result;
  return result;
}

}  // namespace sievestream
