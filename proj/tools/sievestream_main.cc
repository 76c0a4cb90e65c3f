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
// Command-line front end: instance generation, experiment execution,
// oracle validation and report aggregation. Worker count is controlled
// only by the SIEVESTREAM_WORKERS environment variable.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sievestream/harness.h"
#include "sievestream/instance.h"
#include "sievestream/validation.h"

namespace {

using namespace sievestream;

int RunGen(const InstanceSpec& spec, std::uint64_t seed,
           const std::string& out) {
  Instance instance = GenerateInstance(spec, seed);
  SaveInstance(instance, out);
  std::cout << "wrote " << out << " (" << InstanceKindName(instance.kind)
            << ", n=" << instance.n << ", k=" << instance.k << ")\n";
  return 0;
}

int RunValidate(const std::string& path, int exhaustive_cap) {
  Instance instance = LoadInstance(path);
  auto function = instance.MakeFunction();
  ValidationOptions options;
  options.exhaustive_n_cap = exhaustive_cap;
  ValidationResult result = ValidateFunction(*function, options);
  auto verdict = [](bool ok) { return ok ? "ok" : "FAIL"; };
  std::cout << "non-negativity: " << verdict(result.non_negative) << "\n";
  std::cout << "submodularity: " << verdict(result.submodular) << " ("
            << (result.exhaustive ? "exhaustive" : "sampled") << ")\n";
  bool ok = result.ok();
  if (instance.kind == InstanceKind::kHard) {
    HardInstanceFunction hard(instance.hard.k, instance.hard.h);
    std::string detail;
    bool closed = CheckHardClosedForm(hard, &detail);
    std::cout << "hard closed form: " << verdict(closed)
              << (closed ? "" : " (" + detail + ")") << "\n";
    ok = ok && closed;
  }
  if (!ok && !result.detail.empty()) {
    std::cout << "detail: " << result.detail << "\n";
  }
  return ok ? 0 : 1;
}

int RunRun(const std::string& config_path, const std::string& out_prefix) {
  ExperimentConfig config = LoadConfig(config_path);
  std::vector<ReportRow> rows = RunExperiment(config);
  WriteReports(rows, out_prefix);
  int errors = 0;
  for (const ReportRow& r : rows) {
    if (!r.error.empty()) ++errors;
  }
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix
            << ".json (" << rows.size() << " rows, " << errors
            << " with errors)\n";
  return 0;
}

int RunReport(const std::vector<std::string>& inputs,
              const std::string& out) {
  std::vector<ReportRow> rows;
  for (const std::string& path : inputs) {
    std::vector<ReportRow> part = ReadCsv(path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::string csv = AggregateToCsv(Aggregate(rows));
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream file(out, std::ios::trunc);
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    file << csv;
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming submodular maximization under a cardinality "
               "constraint: instances, experiments, reports"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string gen_type = "coverage";
  InstanceSpec spec;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance.json";
  gen->add_option("--type", gen_type, "coverage | cut | hard")
      ->check(CLI::IsMember({"coverage", "cut", "hard"}));
  gen->add_option("--n", spec.n, "ground set size (coverage, cut)");
  gen->add_option("--k", spec.k, "cardinality bound to embed");
  gen->add_option("--universe", spec.universe, "universe size (coverage)");
  gen->add_option("--density", spec.density, "cover density (coverage)");
  gen->add_flag("--unit-weights", spec.unit_weights,
                "unit universe weights (coverage)");
  gen->add_option("--edge-density", spec.edge_density, "edge density (cut)");
  gen->add_option("--hard-k", spec.hard_k, "k of the hard instance");
  gen->add_option("--hard-h", spec.hard_h, "h of the hard instance");
  gen->add_option("--name", spec.name, "embedded instance name");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path");

  // run
  auto* run = app.add_subcommand("run", "run experiments from a config");
  std::string run_config;
  std::string run_out = "results";
  run->add_option("--config", run_config, "experiment config (JSON)")
      ->required();
  run->add_option("--out-prefix", run_out,
                  "output prefix for the .csv and .json reports");

  // validate
  auto* validate =
      app.add_subcommand("validate", "check oracle properties of an instance");
  std::string validate_path;
  int validate_cap = 16;
  validate->add_option("--instance", validate_path, "instance file")
      ->required();
  validate->add_option("--exhaustive-cap", validate_cap,
                       "max n for exhaustive checks");

  // report
  auto* report =
      app.add_subcommand("report", "aggregate report CSVs per instance/variant");
  std::vector<std::string> report_inputs;
  std::string report_out;
  report->add_option("--inputs", report_inputs, "report CSV files")
      ->required();
  report->add_option("--out", report_out, "aggregate CSV (stdout if absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_type == "coverage") spec.kind = InstanceKind::kCoverage;
      if (gen_type == "cut") spec.kind = InstanceKind::kCut;
      if (gen_type == "hard") spec.kind = InstanceKind::kHard;
      return RunGen(spec, gen_seed, gen_out);
    }
    if (run->parsed()) return RunRun(run_config, run_out);
    if (validate->parsed()) return RunValidate(validate_path, validate_cap);
    if (report->parsed()) return RunReport(report_inputs, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
