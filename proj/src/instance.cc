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

#include "sievestream/instance.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sievestream {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "sievestream-instance-v1";

void CheckOrder(const std::vector<ElementId>& order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("arrival order must list all n elements");
  }
  std::vector<char> seen(n, 0);
  for (ElementId u : order) {
    if (u < 0 || u >= n || seen[u]) {
      throw std::invalid_argument("arrival order is not a permutation");
    }
    seen[u] = 1;
  }
}

}  // namespace

std::string InstanceKindName(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kCoverage:
      return "coverage";
    case InstanceKind::kCut:
      return "cut";
    case InstanceKind::kHard:
      return "hard";
  }
  throw std::logic_error("unknown instance kind");
}

std::unique_ptr<SubmodularFunction> Instance::MakeFunction() const {
  switch (kind) {
    case InstanceKind::kCoverage:
      return std::make_unique<CoverageFunction>(coverage.universe_weights,
                                                coverage.covers);
    case InstanceKind::kCut:
      return std::make_unique<CutFunction>(n, cut.edges);
    case InstanceKind::kHard:
      return std::make_unique<HardInstanceFunction>(hard.k, hard.h);
  }
  throw std::logic_error("unknown instance kind");
}

std::string InstanceToJsonString(const Instance& instance) {
  Json j;
  j["schema"] = kSchema;
  j["name"] = instance.name;
  j["type"] = InstanceKindName(instance.kind);
  j["n"] = instance.n;
  j["k"] = instance.k;
  j["order"] = instance.order;
  switch (instance.kind) {
    case InstanceKind::kCoverage: {
      j["universe_weights"] = instance.coverage.universe_weights;
      j["covers"] = instance.coverage.covers;
      break;
    }
    case InstanceKind::kCut: {
      Json edges = Json::array();
      for (const auto& e : instance.cut.edges) {
        edges.push_back(Json::array({e.a, e.b, e.w}));
      }
      j["edges"] = edges;
      break;
    }
    case InstanceKind::kHard: {
      j["hard_k"] = instance.hard.k;
      j["hard_h"] = instance.hard.h;
      break;
    }
  }
  return j.dump(2) + "\n";
}

Instance InstanceFromJsonString(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("instance is not valid JSON: ") +
                                e.what());
  }
  try {
    Instance instance;
    instance.name = j.value("name", "");
    std::string type = j.at("type").get<std::string>();
    instance.n = j.at("n").get<int>();
    if (instance.n < 0) throw std::invalid_argument("n must be >= 0");
    instance.k = j.value("k", 0);
    if (j.contains("order")) {
      instance.order = j.at("order").get<std::vector<ElementId>>();
    } else {
      instance.order.resize(instance.n);
      for (int i = 0; i < instance.n; ++i) instance.order[i] = i;
    }
    CheckOrder(instance.order, instance.n);

    if (type == "coverage") {
      instance.kind = InstanceKind::kCoverage;
      instance.coverage.universe_weights =
          j.at("universe_weights").get<std::vector<double>>();
      instance.coverage.covers =
          j.at("covers").get<std::vector<std::vector<int>>>();
      if (static_cast<int>(instance.coverage.covers.size()) != instance.n) {
        throw std::invalid_argument("covers must list n entries");
      }
    } else if (type == "cut") {
      instance.kind = InstanceKind::kCut;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
          throw std::invalid_argument("edges must be [a, b, weight] triples");
        }
        instance.cut.edges.push_back(
            {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
      }
    } else if (type == "hard") {
      instance.kind = InstanceKind::kHard;
      instance.hard.k = j.at("hard_k").get<int>();
      instance.hard.h = j.at("hard_h").get<int>();
      if (instance.n != instance.hard.k + instance.hard.h) {
        throw std::invalid_argument("hard instance requires n = k + h");
      }
      if (instance.k == 0) instance.k = instance.hard.k;
    } else {
      throw std::invalid_argument("unknown instance type \"" + type + "\"");
    }
    // Constructing the function validates weights, indices and ranges.
    instance.MakeFunction();
    return instance;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance: ") +
                                e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Instance instance = InstanceFromJsonString(text);
  if (instance.name.empty()) {
    auto slash = path.find_last_of('/');
    instance.name = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  return instance;
}

void SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write instance file " + path);
  out << InstanceToJsonString(instance);
}

}  // namespace sievestream
