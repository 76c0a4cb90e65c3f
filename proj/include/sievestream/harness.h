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
// Experiment harness: instance generation, experiment execution over
// (instance, seed, algorithm) rows with memory/oracle accounting, and
// CSV/JSON report emission. Rows run in parallel; the report is assembled
// as an ordered reduction, so output is deterministic up to runtimes.

#ifndef SIEVESTREAM_HARNESS_H_
#define SIEVESTREAM_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievestream/instance.h"
#include "sievestream/sieve.h"

namespace sievestream {

struct InstanceSpec {
  InstanceKind kind = InstanceKind::kCoverage;
  std::string name;  // derived from the parameters when empty
  int n = 0;
  int k = 0;
  // coverage
  int universe = 0;
  double density = 0.3;
  bool unit_weights = false;
  // cut
  double edge_density = 0.3;
  // hard
  int hard_k = 0;
  int hard_h = 0;
};

// Deterministic for a given (spec, seed): the same pair always yields a
// byte-identical instance file. Hard instances stream the u and v elements
// in a seed-derived permutation with w last.
Instance GenerateInstance(const InstanceSpec& spec, std::uint64_t seed);

enum class Variant { kKnownTau, kAutoTau, kSampled, kGreedy, kSieveStreaming };

std::string VariantName(Variant variant);

struct ExperimentConfig {
  std::vector<std::string> instance_paths;
  // Memory-probe alternative to instance_paths: a family of hard instances
  // with fixed k and growing h, streamed with w last.
  struct HardSweep {
    int k = 0;
    std::vector<int> h_values;
    std::uint64_t seed = 1;
  };
  std::optional<HardSweep> hard_sweep;

  Variant variant = Variant::kAutoTau;
  SieveParams params;
  double tau = 0.0;  // known-tau estimate; <= 0 uses the brute-force OPT
  std::vector<std::uint64_t> seeds = {1};
  std::vector<Variant> baselines;
  double sieve_eps = 0.1;  // the integral baseline's grid granularity
  std::uint64_t opt_work_cap = kDefaultBruteForceWorkCap;
  bool memoize = false;
};

ExperimentConfig LoadConfig(const std::string& path);
ExperimentConfig ConfigFromJsonString(const std::string& text);

struct ReportRow {
  std::string instance;
  std::string variant;
  int n = 0;
  int k = 0;
  double p = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double eps_prime = 0.0;
  std::uint64_t seed = 0;
  double f_output = 0.0;
  double f_opt = 0.0;
  bool bound_only = false;  // f_opt is the best value seen, not brute force
  double ratio = 0.0;
  bool has_ratio = false;  // false when f_opt = 0 or the row failed
  std::int64_t max_stored = 0;
  int t_max = 0;
  std::int64_t oracle_calls = 0;
  double runtime_ms = 0.0;
  std::string error;
};

// Executes variant plus baselines over every (instance, seed) pair.
// Capacity errors are recorded in the row's error column, not thrown.
std::vector<ReportRow> RunExperiment(const ExperimentConfig& config,
                                     int workers = 0);

extern const char* const kReportCsvHeader;

std::string RowsToCsv(const std::vector<ReportRow>& rows);
std::string RowsToJsonString(const std::vector<ReportRow>& rows);
void WriteReports(const std::vector<ReportRow>& rows,
                  const std::string& out_prefix);  // .csv and .json

std::vector<ReportRow> ReadCsv(const std::string& path);
std::vector<ReportRow> RowsFromCsvString(const std::string& text);
std::vector<ReportRow> RowsFromJsonString(const std::string& text);

struct AggregateRow {
  std::string instance;
  std::string variant;
  int runs = 0;
  int errors = 0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_f_output = 0.0;
  double mean_oracle_calls = 0.0;
  double mean_runtime_ms = 0.0;
};

std::vector<AggregateRow> Aggregate(const std::vector<ReportRow>& rows);
std::string AggregateToCsv(const std::vector<AggregateRow>& rows);

}  // namespace sievestream

#endif  // SIEVESTREAM_HARNESS_H_
