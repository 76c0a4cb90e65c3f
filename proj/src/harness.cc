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

#include "sievestream/harness.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "sievestream/baselines.h"
#include "sievestream/errors.h"
#include "sievestream/offline.h"
#include "sievestream/parallel.h"
#include "sievestream/random.h"

namespace sievestream {

namespace {

using Json = nlohmann::ordered_json;

std::string FormatDouble(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string FormatParam(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

Instance GenerateInstance(const InstanceSpec& spec, std::uint64_t seed) {
  Instance instance;
  instance.kind = spec.kind;
  instance.k = spec.k;
  Rng rng(MixSeed(seed, 0x696e7374));

  auto shuffled_order = [&](int n, bool fix_last) {
    std::vector<ElementId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    int limit = fix_last ? n - 1 : n;
    for (int i = limit - 1; i > 0; --i) {
      std::swap(order[i], order[rng.UniformInt(i + 1)]);
    }
    return order;
  };

  switch (spec.kind) {
    case InstanceKind::kCoverage: {
      if (spec.n < 1 || spec.universe < 1) {
        throw std::invalid_argument("coverage spec requires n and universe");
      }
      if (!(spec.density > 0.0 && spec.density <= 1.0)) {
        throw std::invalid_argument("density must be in (0, 1]");
      }
      instance.n = spec.n;
      instance.coverage.universe_weights.resize(spec.universe);
      for (double& w : instance.coverage.universe_weights) {
        w = spec.unit_weights ? 1.0 : rng.Uniform();
      }
      instance.coverage.covers.assign(spec.n, {});
      for (int i = 0; i < spec.n; ++i) {
        for (int j = 0; j < spec.universe; ++j) {
          if (rng.Bernoulli(spec.density)) {
            instance.coverage.covers[i].push_back(j);
          }
        }
      }
      instance.order = shuffled_order(spec.n, false);
      instance.name = spec.name.empty()
                          ? "coverage-n" + std::to_string(spec.n) + "-u" +
                                std::to_string(spec.universe) + "-d" +
                                FormatParam(spec.density) + "-s" +
                                std::to_string(seed)
                          : spec.name;
      break;
    }
    case InstanceKind::kCut: {
      if (spec.n < 1) throw std::invalid_argument("cut spec requires n");
      if (!(spec.edge_density > 0.0 && spec.edge_density <= 1.0)) {
        throw std::invalid_argument("edge density must be in (0, 1]");
      }
      instance.n = spec.n;
      for (int a = 0; a < spec.n; ++a) {
        for (int b = a + 1; b < spec.n; ++b) {
          if (rng.Bernoulli(spec.edge_density)) {
            instance.cut.edges.push_back({a, b, rng.Uniform()});
          }
        }
      }
      instance.order = shuffled_order(spec.n, false);
      instance.name = spec.name.empty()
                          ? "cut-n" + std::to_string(spec.n) + "-d" +
                                FormatParam(spec.edge_density) + "-s" +
                                std::to_string(seed)
                          : spec.name;
      break;
    }
    case InstanceKind::kHard: {
      if (spec.hard_k < 1 || spec.hard_h < 1) {
        throw std::invalid_argument("hard spec requires k >= 1 and h >= 1");
      }
      instance.hard.k = spec.hard_k;
      instance.hard.h = spec.hard_h;
      instance.n = spec.hard_k + spec.hard_h;
      if (instance.k == 0) instance.k = spec.hard_k;
      // Adversarial arrival order: u and v elements in a seed-derived
      // permutation, the closing element w strictly last.
      instance.order = shuffled_order(instance.n, true);
      instance.name = spec.name.empty()
                          ? "hard-k" + std::to_string(spec.hard_k) + "-h" +
                                std::to_string(spec.hard_h) + "-s" +
                                std::to_string(seed)
                          : spec.name;
      break;
    }
  }
  // Constructing the oracle validates the payload.
  instance.MakeFunction();
  return instance;
}

std::string VariantName(Variant variant) {
  switch (variant) {
    case Variant::kKnownTau:
      return "known_tau";
    case Variant::kAutoTau:
      return "auto_tau";
    case Variant::kSampled:
      return "sampled";
    case Variant::kGreedy:
      return "greedy";
    case Variant::kSieveStreaming:
      return "sieve_streaming";
  }
  throw std::logic_error("unknown variant");
}

namespace {

Variant ParseVariant(const std::string& name) {
  if (name == "known_tau") return Variant::kKnownTau;
  if (name == "auto_tau") return Variant::kAutoTau;
  if (name == "sampled") return Variant::kSampled;
  if (name == "greedy") return Variant::kGreedy;
  if (name == "sieve_streaming") return Variant::kSieveStreaming;
  throw std::invalid_argument("unknown variant \"" + name + "\"");
}

}  // namespace

ExperimentConfig ConfigFromJsonString(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  try {
    ExperimentConfig config;
    if (j.contains("instances")) {
      config.instance_paths =
          j.at("instances").get<std::vector<std::string>>();
    }
    if (j.contains("hard_sweep")) {
      const Json& sweep = j.at("hard_sweep");
      ExperimentConfig::HardSweep hs;
      hs.k = sweep.at("k").get<int>();
      hs.h_values = sweep.at("h_values").get<std::vector<int>>();
      hs.seed = sweep.value("seed", 1);
      config.hard_sweep = hs;
    }
    if (config.instance_paths.empty() && !config.hard_sweep) {
      throw std::invalid_argument(
          "config needs \"instances\" or \"hard_sweep\"");
    }
    config.variant = ParseVariant(j.value("variant", "auto_tau"));
    config.params.k = j.value("k", 1);
    config.params.p = j.value("p", 0.125);
    config.params.alpha = j.value("alpha", 1.0);
    if (j.contains("c") && !j.at("c").is_string()) {
      config.params.c = j.at("c").get<double>();
    }  // "auto" (or absent) keeps c <= 0, selecting ChooseC(alpha, p)
    config.params.eps_prime = j.value("eps_prime", 0.125);
    std::string offline = j.value("offline", "brute_force");
    if (offline == "brute_force") {
      config.params.offline = OfflineMode::kBruteForce;
    } else if (offline == "random_greedy") {
      config.params.offline = OfflineMode::kRandomGreedy;
    } else {
      throw std::invalid_argument("unknown offline mode \"" + offline + "\"");
    }
    config.params.sample_scale = j.value("sample_scale", 1.0);
    config.params.sample_cap = j.value("sample_cap", std::int64_t{0});
    config.params.exact_derivative_override =
        j.value("exact_derivative_override", false);
    if (j.contains("caps")) {
      const Json& caps = j.at("caps");
      config.params.exact_support_cap =
          caps.value("exact_support", kDefaultExactSupportCap);
      config.params.offline_work_cap =
          caps.value("offline_work", kDefaultBruteForceWorkCap);
      config.opt_work_cap = caps.value("opt_work", kDefaultBruteForceWorkCap);
    }
    if (j.contains("tau") && !j.at("tau").is_string()) {
      config.tau = j.at("tau").get<double>();
    }  // "opt" (or absent) keeps tau <= 0, using the brute-force optimum
    if (j.contains("seeds")) {
      const Json& seeds = j.at("seeds");
      if (seeds.is_array()) {
        config.seeds = seeds.get<std::vector<std::uint64_t>>();
      } else {
        std::uint64_t count = seeds.at("count").get<std::uint64_t>();
        std::uint64_t base = seeds.value("base", 1);
        config.seeds.clear();
        for (std::uint64_t s = 0; s < count; ++s) {
          config.seeds.push_back(base + s);
        }
      }
    }
    if (config.seeds.empty()) {
      throw std::invalid_argument("config needs at least one seed");
    }
    if (j.contains("baselines")) {
      for (const auto& name : j.at("baselines")) {
        config.baselines.push_back(ParseVariant(name.get<std::string>()));
      }
    }
    config.sieve_eps = j.value("sieve_eps", 0.1);
    config.memoize = j.value("memoize", false);
    return config;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig LoadConfig(const std::string& path) {
  return ConfigFromJsonString(ReadFile(path));
}

namespace {

struct PreparedInstance {
  Instance instance;
  int k = 0;
  double f_opt = 0.0;
  bool opt_exact = false;
};

std::string Sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

ReportRow RunOneRow(const PreparedInstance& prepared, Variant variant,
                    const ExperimentConfig& config, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const Instance& inst = prepared.instance;
  ReportRow row;
  row.instance = inst.name;
  row.variant = VariantName(variant);
  row.n = inst.n;
  row.k = prepared.k;
  row.seed = seed;
  const bool sieve_variant = variant == Variant::kKnownTau ||
                             variant == Variant::kAutoTau ||
                             variant == Variant::kSampled;
  SieveParams params = config.params;
  params.k = prepared.k;
  if (sieve_variant) {
    row.p = params.p;
    row.c = params.EffectiveC();
    row.alpha = params.alpha;
    row.eps_prime = params.eps_prime;
  }

  std::unique_ptr<SubmodularFunction> function = inst.MakeFunction();
  if (config.memoize) {
    function = std::make_unique<MemoizingFunction>(std::move(function));
  }
  const SubmodularFunction& f = *function;

  try {
    switch (variant) {
      case Variant::kKnownTau: {
        double tau = config.tau;
        if (tau <= 0.0) {
          if (!prepared.opt_exact || prepared.f_opt <= 0.0) {
            throw CapacityError(
                "known-tau run needs tau or a computable optimum");
          }
          tau = prepared.f_opt;
        }
        RunResult result = RunKnownTau(f, inst.order, tau, params, seed);
        row.f_output = result.value;
        row.max_stored = result.diagnostics.max_stored;
        row.t_max = result.diagnostics.t_max;
        row.oracle_calls = result.diagnostics.oracle_calls;
        break;
      }
      case Variant::kAutoTau:
      case Variant::kSampled: {
        RunResult result = variant == Variant::kAutoTau
                               ? RunAutoTau(f, inst.order, params, seed)
                               : RunSampled(f, inst.order, params, seed);
        row.f_output = result.value;
        row.max_stored = result.diagnostics.max_stored;
        row.t_max = result.diagnostics.t_max;
        row.oracle_calls = result.diagnostics.oracle_calls;
        break;
      }
      case Variant::kGreedy: {
        ElementSet ground(inst.n);
        for (int i = 0; i < inst.n; ++i) ground[i] = i;
        std::int64_t before = f.Calls();
        OfflineSolution solution = GreedyBaseline(f, ground, prepared.k);
        row.f_output = solution.value;
        row.max_stored = inst.n;  // offline: the whole ground set is held
        row.oracle_calls = f.Calls() - before;
        break;
      }
      case Variant::kSieveStreaming: {
        std::int64_t before = f.Calls();
        IntegralSieveResult result =
            SieveStreamingBaseline(f, inst.order, prepared.k,
                                   config.sieve_eps);
        row.f_output = result.value;
        row.max_stored = result.max_stored;
        row.t_max = result.t_max;
        row.oracle_calls = f.Calls() - before;
        break;
      }
    }
  } catch (const std::exception& e) {
    row.error = Sanitize(e.what());
    row.f_output = 0.0;
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return row;
}

}  // namespace

std::vector<ReportRow> RunExperiment(const ExperimentConfig& config,
                                     int workers) {
  std::vector<PreparedInstance> prepared;
  for (const std::string& path : config.instance_paths) {
    prepared.push_back({LoadInstance(path)});
  }
  if (config.hard_sweep) {
    for (int h : config.hard_sweep->h_values) {
      InstanceSpec spec;
      spec.kind = InstanceKind::kHard;
      spec.hard_k = config.hard_sweep->k;
      spec.hard_h = h;
      prepared.push_back({GenerateInstance(spec, config.hard_sweep->seed)});
    }
  }

  for (PreparedInstance& pi : prepared) {
    pi.k = pi.instance.k > 0 ? pi.instance.k : config.params.k;
    if (pi.k < 1) {
      throw std::invalid_argument("instance " + pi.instance.name +
                                  " has no usable cardinality bound");
    }
    std::unique_ptr<SubmodularFunction> f = pi.instance.MakeFunction();
    ElementSet ground(pi.instance.n);
    for (int i = 0; i < pi.instance.n; ++i) ground[i] = i;
    try {
      OfflineSolution opt = BruteForce(*f, ground, pi.k, config.opt_work_cap);
      pi.f_opt = opt.value;
      pi.opt_exact = true;
    } catch (const CapacityError&) {
      pi.opt_exact = false;  // fall back to the best value observed
    }
  }

  std::vector<Variant> variants;
  variants.push_back(config.variant);
  for (Variant b : config.baselines) variants.push_back(b);

  struct RowTask {
    int instance_index;
    Variant variant;
    std::uint64_t seed;
  };
  std::vector<RowTask> tasks;
  for (int i = 0; i < static_cast<int>(prepared.size()); ++i) {
    for (std::uint64_t seed : config.seeds) {
      for (Variant v : variants) {
        tasks.push_back({i, v, seed});
      }
    }
  }

  std::vector<ReportRow> rows(tasks.size());
  ParallelFor(static_cast<std::int64_t>(tasks.size()), workers,
              [&](std::int64_t t) {
                const RowTask& task = tasks[t];
                rows[t] = RunOneRow(prepared[task.instance_index],
                                    task.variant, config, task.seed);
              });

  // Ratios: against the brute-force optimum when it was computable,
  // otherwise against the best value any algorithm achieved on the
  // instance (flagged bound_only).
  std::map<std::string, double> best_seen;
  for (int i = 0; i < static_cast<int>(prepared.size()); ++i) {
    double best = 0.0;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (tasks[t].instance_index == i) {
        best = std::max(best, rows[t].f_output);
      }
    }
    best_seen[prepared[i].instance.name] = best;
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const PreparedInstance& pi = prepared[tasks[t].instance_index];
    ReportRow& row = rows[t];
    row.bound_only = !pi.opt_exact;
    row.f_opt = pi.opt_exact ? pi.f_opt : best_seen[pi.instance.name];
    row.has_ratio = row.error.empty() && row.f_opt > 0.0;
    row.ratio = row.has_ratio ? row.f_output / row.f_opt : 0.0;
  }
  return rows;
}

const char* const kReportCsvHeader =
    "instance,variant,n,k,p,c,alpha,eps_prime,seed,f_output,f_opt,"
    "bound_only,ratio,max_stored,t_max,oracle_calls,runtime_ms,error";

std::string RowsToCsv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kReportCsvHeader << "\n";
  for (const ReportRow& r : rows) {
    out << r.instance << ',' << r.variant << ',' << r.n << ',' << r.k << ','
        << FormatDouble(r.p) << ',' << FormatDouble(r.c) << ','
        << FormatDouble(r.alpha) << ',' << FormatDouble(r.eps_prime) << ','
        << r.seed << ',' << FormatDouble(r.f_output) << ','
        << FormatDouble(r.f_opt) << ',' << (r.bound_only ? 1 : 0) << ','
        << (r.has_ratio ? FormatDouble(r.ratio) : std::string()) << ','
        << r.max_stored << ',' << r.t_max << ',' << r.oracle_calls << ','
        << FormatDouble(r.runtime_ms) << ',' << r.error << "\n";
  }
  return out.str();
}

std::string RowsToJsonString(const std::vector<ReportRow>& rows) {
  Json array = Json::array();
  for (const ReportRow& r : rows) {
    Json j;
    j["instance"] = r.instance;
    j["variant"] = r.variant;
    j["n"] = r.n;
    j["k"] = r.k;
    j["p"] = r.p;
    j["c"] = r.c;
    j["alpha"] = r.alpha;
    j["eps_prime"] = r.eps_prime;
    j["seed"] = r.seed;
    j["f_output"] = r.f_output;
    j["f_opt"] = r.f_opt;
    j["bound_only"] = r.bound_only;
    if (r.has_ratio) {
      j["ratio"] = r.ratio;
    } else {
      j["ratio"] = nullptr;
    }
    j["max_stored"] = r.max_stored;
    j["t_max"] = r.t_max;
    j["oracle_calls"] = r.oracle_calls;
    j["runtime_ms"] = r.runtime_ms;
    j["error"] = r.error;
    array.push_back(std::move(j));
  }
  return array.dump(2) + "\n";
}

void WriteReports(const std::vector<ReportRow>& rows,
                  const std::string& out_prefix) {
  {
    std::ofstream csv(out_prefix + ".csv", std::ios::trunc);
    if (!csv) throw std::invalid_argument("cannot write " + out_prefix + ".csv");
    csv << RowsToCsv(rows);
  }
  std::ofstream json(out_prefix + ".json", std::ios::trunc);
  if (!json) throw std::invalid_argument("cannot write " + out_prefix + ".json");
  json << RowsToJsonString(rows);
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<ReportRow> RowsFromCsvString(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kReportCsvHeader) {
    throw std::invalid_argument("unrecognized report CSV header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 18) {
      throw std::invalid_argument("report CSV row has wrong field count");
    }
    ReportRow r;
    r.instance = f[0];
    r.variant = f[1];
    r.n = std::stoi(f[2]);
    r.k = std::stoi(f[3]);
    r.p = std::stod(f[4]);
    r.c = std::stod(f[5]);
    r.alpha = std::stod(f[6]);
    r.eps_prime = std::stod(f[7]);
    r.seed = std::stoull(f[8]);
    r.f_output = std::stod(f[9]);
    r.f_opt = std::stod(f[10]);
    r.bound_only = f[11] == "1";
    r.has_ratio = !f[12].empty();
    r.ratio = r.has_ratio ? std::stod(f[12]) : 0.0;
    r.max_stored = std::stoll(f[13]);
    r.t_max = std::stoi(f[14]);
    r.oracle_calls = std::stoll(f[15]);
    r.runtime_ms = std::stod(f[16]);
    r.error = f[17];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> ReadCsv(const std::string& path) {
  return RowsFromCsvString(ReadFile(path));
}

std::vector<ReportRow> RowsFromJsonString(const std::string& text) {
  Json array = Json::parse(text);
  std::vector<ReportRow> rows;
  for (const Json& j : array) {
    ReportRow r;
    r.instance = j.at("instance").get<std::string>();
    r.variant = j.at("variant").get<std::string>();
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.p = j.at("p").get<double>();
    r.c = j.at("c").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.eps_prime = j.at("eps_prime").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.f_output = j.at("f_output").get<double>();
    r.f_opt = j.at("f_opt").get<double>();
    r.bound_only = j.at("bound_only").get<bool>();
    r.has_ratio = !j.at("ratio").is_null();
    r.ratio = r.has_ratio ? j.at("ratio").get<double>() : 0.0;
    r.max_stored = j.at("max_stored").get<std::int64_t>();
    r.t_max = j.at("t_max").get<int>();
    r.oracle_calls = j.at("oracle_calls").get<std::int64_t>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    r.error = j.at("error").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AggregateRow> Aggregate(const std::vector<ReportRow>& rows) {
  std::vector<AggregateRow> result;
  std::map<std::pair<std::string, std::string>, int> index;
  for (const ReportRow& r : rows) {
    auto key = std::make_pair(r.instance, r.variant);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, static_cast<int>(result.size())).first;
      AggregateRow agg;
      agg.instance = r.instance;
      agg.variant = r.variant;
      agg.min_ratio = 1.0;
      result.push_back(agg);
    }
    AggregateRow& agg = result[it->second];
    ++agg.runs;
    if (!r.error.empty()) ++agg.errors;
    agg.mean_f_output += r.f_output;
    agg.mean_oracle_calls += static_cast<double>(r.oracle_calls);
    agg.mean_runtime_ms += r.runtime_ms;
    if (r.has_ratio) {
      agg.mean_ratio += r.ratio;
      agg.min_ratio = std::min(agg.min_ratio, r.ratio);
      agg.max_ratio = std::max(agg.max_ratio, r.ratio);
    }
  }
  for (AggregateRow& agg : result) {
    int with_ratio = 0;
    for (const ReportRow& r : rows) {
      if (r.instance == agg.instance && r.variant == agg.variant &&
          r.has_ratio) {
        ++with_ratio;
      }
    }
    if (with_ratio > 0) agg.mean_ratio /= with_ratio;
    if (agg.runs > 0) {
      agg.mean_f_output /= agg.runs;
      agg.mean_oracle_calls /= agg.runs;
      agg.mean_runtime_ms /= agg.runs;
    }
    if (with_ratio == 0) {
      agg.min_ratio = 0.0;
      agg.max_ratio = 0.0;
    }
  }
  return result;
}

std::string AggregateToCsv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "instance,variant,runs,errors,mean_ratio,min_ratio,max_ratio,"
         "mean_f_output,mean_oracle_calls,mean_runtime_ms\n";
  for (const AggregateRow& r : rows) {
    out << r.instance << ',' << r.variant << ',' << r.runs << ',' << r.errors
        << ',' << FormatDouble(r.mean_ratio) << ','
        << FormatDouble(r.min_ratio) << ',' << FormatDouble(r.max_ratio)
        << ',' << FormatDouble(r.mean_f_output) << ','
        << FormatDouble(r.mean_oracle_calls) << ','
        << FormatDouble(r.mean_runtime_ms) << "\n";
  }
  return out.str();
}

}  // namespace sievestream
