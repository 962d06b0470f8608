// Copyright 2026 The thermochain Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "thermochain/experiment.hpp"

namespace ex = thermochain::experiment;

namespace {

constexpr int kExitValidationFailed = 1;
constexpr int kExitConfigError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ex::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run(const std::string& command, ex::ExperimentConfig config) {
  if (command == "dynamics") {
    config.mode = ex::Mode::Dynamics;
  } else if (command == "steady") {
    config.mode = ex::Mode::Steady;
  } else if (command == "compare") {
    if (config.mode != ex::Mode::SweepEquilibrium && config.mode != ex::Mode::SweepNonequilibrium) {
      config.mode = ex::Mode::Compare2v3;
    }
  } else {
    config.mode = ex::Mode::Validate;
  }
  ex::validate_config(config);
  if (config.threads > 0) omp_set_num_threads(config.threads);

  switch (config.mode) {
    case ex::Mode::Dynamics:
      emit(ex::run_dynamics(config), config.output_path);
      return 0;
    case ex::Mode::Steady:
      emit(ex::run_steady(config), config.output_path);
      return 0;
    case ex::Mode::Validate: {
      const auto report = ex::run_validate(config);
      const std::string path = config.output_path.empty() ? "validation_report.json" : config.output_path;
      emit(report.to_json(config), path);
      for (const auto& c : report.checks) {
        std::printf("%-4s %-45s %.3e %s %.3e\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.measured,
                    c.relation.c_str(), c.threshold);
      }
      std::printf("%zu checks, %s, %.2f s, report: %s\n", report.checks.size(),
                  report.all_passed() ? "all passed" : "FAILURES", report.runtime_seconds, path.c_str());
      return report.all_passed() ? 0 : kExitValidationFailed;
    }
    default:
      emit(ex::run_compare_2v3(config), config.output_path);
      return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermally driven qubit chains: dynamics, steady states, entanglement"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::string> output;
  std::optional<int> threads;
  std::vector<std::string> overrides;

  const std::pair<const char*, const char*> subcommands[] = {
      {"dynamics", "time trace of concurrence and eigenbasis populations (CSV)"},
      {"steady", "numerical steady state against the closed form and the Gibbs state (CSV)"},
      {"compare", "2- vs 3-qubit steady concurrence over a temperature sweep (CSV)"},
      {"validate", "self-consistency checks, JSON report, exit 1 on any failure"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "YAML configuration file")->check(CLI::ExistingFile);
    sub->add_option("--output", output, "output path (CSV, or JSON report for validate); '-' for stdout");
    sub->add_option("--threads", threads, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--set", overrides, "override a config value, e.g. chain.epsilon=2")->allow_extra_args(false);
  }
  app.description(
      "compare runs the sweep-equilibrium or sweep-nonequilibrium mode named in the config, else compare-2v3.\n"
      "Exit codes: 0 success, 1 validation failure, 2 configuration or domain error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    auto config = ex::load_config(config_path, overrides);
    if (output) config.output_path = *output;
    if (threads) config.threads = *threads;
    return run(app.get_subcommands().front()->get_name(), config);
  } catch (const thermochain::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
