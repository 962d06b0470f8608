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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermochain/dynamics.hpp"
#include "thermochain/model.hpp"

namespace thermochain::experiment {

// Bad configuration or a physics-domain violation detected before running.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Mode { Dynamics, Steady, SweepEquilibrium, SweepNonequilibrium, Compare2v3, Validate };

struct InitialState {
  enum class Kind { W3, Ground, Gibbs, CustomFile };
  Kind kind = Kind::W3;
  double beta = 0.0;  // Gibbs only
  std::string path;   // CustomFile only
};

struct TimeGrid {
  double t_max = 250.0;
  int n_points = 251;
};

// Temperatures T = 1/β; the second bath runs at ratio * T1.
struct SweepGrid {
  double t_min = 0.05;
  double t_max = 3.0;
  int n_points = 200;
  double ratio = 1.0;
};

struct Tolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
  dynamics::Backend backend = dynamics::Backend::RungeKutta;
};

struct ExperimentConfig {
  Mode mode = Mode::Dynamics;
  model::ChainSpec chain = model::ChainSpec::end_coupled(3, 1.5, 1.0, 1.0 / 50, 10.0, 1.0 / 50, 10.0);
  InitialState initial_state;
  TimeGrid time_grid;
  SweepGrid sweep;
  std::string output_path;
  Tolerances tolerances;
  int threads = 0;  // 0: OpenMP default
  // Swaps the rate convention of the closed-form oracles (self-test of the
  // validation suite).
  bool swap_rate_convention = false;
};

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& name);

// Parses a YAML document. Missing keys keep their defaults.
ExperimentConfig parse_config(const std::string& yaml_text);

// Reads `path` (if given) and applies `key=value` overrides, where key is a
// dotted path such as `chain.epsilon` or `chain.baths.1.beta`.
ExperimentConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides);

// Canonical YAML rendering of the effective configuration.
std::string to_yaml(const ExperimentConfig& config);

// Positivity of every parameter and of each bath-coupled Bohr frequency.
// Throws ConfigError naming the offending quantity.
void validate_config(const ExperimentConfig& config);

// CSV producers. Each begins with the effective configuration as '#' lines.
std::string run_dynamics(const ExperimentConfig& config);
std::string run_steady(const ExperimentConfig& config);
std::string run_compare_2v3(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "==" comparing measured with threshold
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double runtime_seconds = 0.0;

  bool all_passed() const;
  std::string to_json(const ExperimentConfig& config) const;
};

ValidationReport run_validate(const ExperimentConfig& config);

// Reproducible random end-coupled chains for n in {2, 3}: ε in [0.5, 3],
// 0 < K < 0.95 ε (n=2) or 0.95 ε/√2 (n=3), γ log-uniform in [1e-3, 0.1],
// β log-uniform in [0.2, 20].
std::vector<model::ChainSpec> random_specs(int n_qubits, int count, unsigned long long seed);

// "%.17g" rendering used for every CSV number.
std::string format_number(double x);

}  // namespace thermochain::experiment
