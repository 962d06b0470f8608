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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "thermochain/experiment.hpp"

namespace thermochain::experiment {

namespace {

const std::set<std::string> kTopKeys = {"mode",   "chain",      "initial_state", "time_grid", "sweep",
                                        "output", "tolerances", "threads",       "debug"};

void reject_unknown(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& where) {
  if (!node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot parse " + where + "." + key);
  }
}

model::BathSpec parse_bath(const YAML::Node& node, int n_qubits, std::size_t index) {
  const std::string where = "chain.baths." + std::to_string(index);
  reject_unknown(node, {"site", "gamma", "beta"}, where);
  model::BathSpec bath;
  if (!node["site"]) throw ConfigError(where + ".site is required");
  const auto site = node["site"].as<std::string>();
  if (site == "first") {
    bath.site = 0;
  } else if (site == "last") {
    bath.site = n_qubits - 1;
  } else {
    read(node, "site", bath.site, where);
  }
  read(node, "gamma", bath.gamma, where);
  read(node, "beta", bath.beta, where);
  return bath;
}

InitialState parse_initial_state(const std::string& tag) {
  InitialState s;
  if (tag == "w3") {
    s.kind = InitialState::Kind::W3;
  } else if (tag == "ground") {
    s.kind = InitialState::Kind::Ground;
  } else if (tag.rfind("gibbs:", 0) == 0) {
    s.kind = InitialState::Kind::Gibbs;
    try {
      std::size_t used = 0;
      s.beta = std::stod(tag.substr(6), &used);
      if (used != tag.size() - 6) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("initial_state '" + tag + "': expected gibbs:<beta>");
    }
  } else if (tag.rfind("file:", 0) == 0) {
    s.kind = InitialState::Kind::CustomFile;
    s.path = tag.substr(5);
  } else {
    throw ConfigError("initial_state must be w3, ground, gibbs:<beta> or file:<path>, got '" + tag + "'");
  }
  return s;
}

std::string initial_state_tag(const InitialState& s) {
  switch (s.kind) {
    case InitialState::Kind::W3:
      return "w3";
    case InitialState::Kind::Ground:
      return "ground";
    case InitialState::Kind::Gibbs:
      return "gibbs:" + format_number(s.beta);
    case InitialState::Kind::CustomFile:
      return "file:" + s.path;
  }
  return "w3";
}

ExperimentConfig parse_node(const YAML::Node& root) {
  ExperimentConfig c;
  if (!root || root.IsNull()) return c;
  reject_unknown(root, kTopKeys, "config");

  if (root["mode"]) c.mode = parse_mode(root["mode"].as<std::string>());

  if (const YAML::Node chain = root["chain"]) {
    reject_unknown(chain, {"n_qubits", "epsilon", "coupling", "baths"}, "chain");
    const int old_n = c.chain.n_qubits;
    read(chain, "n_qubits", c.chain.n_qubits, "chain");
    read(chain, "epsilon", c.chain.epsilon, "chain");
    read(chain, "coupling", c.chain.coupling, "chain");
    if (const YAML::Node baths = chain["baths"]) {
      if (!baths.IsSequence()) throw ConfigError("chain.baths must be a list");
      c.chain.baths.clear();
      for (std::size_t i = 0; i < baths.size(); ++i) c.chain.baths.push_back(parse_bath(baths[i], c.chain.n_qubits, i));
    } else {
      // Default baths stay on the end sites when only n_qubits changes.
      for (auto& bath : c.chain.baths) {
        if (bath.site == old_n - 1) bath.site = c.chain.n_qubits - 1;
      }
    }
  }

  if (root["initial_state"]) c.initial_state = parse_initial_state(root["initial_state"].as<std::string>());

  if (const YAML::Node grid = root["time_grid"]) {
    reject_unknown(grid, {"t_max", "n_points"}, "time_grid");
    read(grid, "t_max", c.time_grid.t_max, "time_grid");
    read(grid, "n_points", c.time_grid.n_points, "time_grid");
  }
  if (const YAML::Node sweep = root["sweep"]) {
    reject_unknown(sweep, {"t_min", "t_max", "n_points", "ratio"}, "sweep");
    read(sweep, "t_min", c.sweep.t_min, "sweep");
    read(sweep, "t_max", c.sweep.t_max, "sweep");
    read(sweep, "n_points", c.sweep.n_points, "sweep");
    read(sweep, "ratio", c.sweep.ratio, "sweep");
  }
  read(root, "output", c.output_path, "config");
  if (const YAML::Node tol = root["tolerances"]) {
    reject_unknown(tol, {"rtol", "atol", "backend"}, "tolerances");
    read(tol, "rtol", c.tolerances.rtol, "tolerances");
    read(tol, "atol", c.tolerances.atol, "tolerances");
    if (tol["backend"]) {
      const auto b = tol["backend"].as<std::string>();
      if (b == "rk45") {
        c.tolerances.backend = dynamics::Backend::RungeKutta;
      } else if (b == "expm") {
        c.tolerances.backend = dynamics::Backend::MatrixExponential;
      } else {
        throw ConfigError("tolerances.backend must be rk45 or expm, got '" + b + "'");
      }
    }
  }
  read(root, "threads", c.threads, "config");
  if (const YAML::Node debug = root["debug"]) {
    reject_unknown(debug, {"swap_rate_convention"}, "debug");
    read(debug, "swap_rate_convention", c.swap_rate_convention, "debug");
  }
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

bool is_index(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

void set_path(YAML::Node node, const std::vector<std::string>& keys, std::size_t i, const YAML::Node& value) {
  const std::string& key = keys[i];
  const bool last = i + 1 == keys.size();
  if (node.IsSequence() && is_index(key)) {
    const std::size_t idx = std::stoul(key);
    if (idx >= node.size()) throw ConfigError("override index " + key + " out of range");
    if (last) {
      node[idx] = value;
    } else {
      set_path(node[idx], keys, i + 1, value);
    }
    return;
  }
  if (last) {
    node[key] = value;
    return;
  }
  if (!node[key]) node[key] = YAML::Node(YAML::NodeType::Map);
  set_path(node[key], keys, i + 1, value);
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Dynamics:
      return "dynamics";
    case Mode::Steady:
      return "steady";
    case Mode::SweepEquilibrium:
      return "sweep-equilibrium";
    case Mode::SweepNonequilibrium:
      return "sweep-nonequilibrium";
    case Mode::Compare2v3:
      return "compare-2v3";
    case Mode::Validate:
      return "validate";
  }
  return "dynamics";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::Dynamics, Mode::Steady, Mode::SweepEquilibrium, Mode::SweepNonequilibrium, Mode::Compare2v3,
                 Mode::Validate}) {
    if (mode_name(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + name + "'");
}

ExperimentConfig parse_config(const std::string& yaml_text) {
  try {
    return parse_node(YAML::Load(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  try {
    YAML::Node root;
    if (path) {
      std::ifstream in(*path);
      if (!in) throw ConfigError("cannot open config file '" + *path + "'");
      std::stringstream text;
      text << in.rdbuf();
      root = YAML::Load(text.str());
      if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    } else {
      root = YAML::Node(YAML::NodeType::Map);
    }
    // Overrides address the effective config, defaults included.
    root = YAML::Load(to_yaml(parse_node(root)));
    for (const auto& item : overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' is not key=value");
      const auto keys = split(item.substr(0, eq), '.');
      set_path(root, keys, 0, YAML::Load(item.substr(eq + 1)));
    }
    return parse_node(root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string to_yaml(const ExperimentConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << mode_name(c.mode);
  out << YAML::Key << "chain" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_qubits" << YAML::Value << c.chain.n_qubits;
  out << YAML::Key << "epsilon" << YAML::Value << c.chain.epsilon;
  out << YAML::Key << "coupling" << YAML::Value << c.chain.coupling;
  out << YAML::Key << "baths" << YAML::Value << YAML::BeginSeq;
  for (const auto& b : c.chain.baths) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "site" << YAML::Value;
    if (b.site == 0) {
      out << "first";
    } else if (b.site == c.chain.n_qubits - 1) {
      out << "last";
    } else {
      out << b.site;
    }
    out << YAML::Key << "gamma" << YAML::Value << b.gamma;
    out << YAML::Key << "beta" << YAML::Value << b.beta;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::Key << "initial_state" << YAML::Value << initial_state_tag(c.initial_state);
  out << YAML::Key << "time_grid" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "t_max" << YAML::Value << c.time_grid.t_max;
  out << YAML::Key << "n_points" << YAML::Value << c.time_grid.n_points << YAML::EndMap;
  out << YAML::Key << "sweep" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "t_min" << YAML::Value << c.sweep.t_min;
  out << YAML::Key << "t_max" << YAML::Value << c.sweep.t_max;
  out << YAML::Key << "n_points" << YAML::Value << c.sweep.n_points;
  out << YAML::Key << "ratio" << YAML::Value << c.sweep.ratio << YAML::EndMap;
  out << YAML::Key << "output" << YAML::Value << c.output_path;
  out << YAML::Key << "tolerances" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "rtol" << YAML::Value << c.tolerances.rtol;
  out << YAML::Key << "atol" << YAML::Value << c.tolerances.atol;
  out << YAML::Key << "backend" << YAML::Value
      << (c.tolerances.backend == dynamics::Backend::RungeKutta ? "rk45" : "expm") << YAML::EndMap;
  out << YAML::Key << "threads" << YAML::Value << c.threads;
  out << YAML::Key << "debug" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "swap_rate_convention" << YAML::Value << c.swap_rate_convention << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  try {
    c.chain.validate();
  } catch (const InvalidSpec& e) {
    throw ConfigError(e.what());
  }
  if (c.threads < 0) throw ConfigError("threads must be >= 0");
  if (!(c.tolerances.rtol > 0.0) || !(c.tolerances.atol > 0.0)) throw ConfigError("tolerances must be positive");

  const bool sweeping =
      c.mode == Mode::SweepEquilibrium || c.mode == Mode::SweepNonequilibrium || c.mode == Mode::Compare2v3;
  if (c.mode == Mode::Dynamics) {
    if (!(c.time_grid.t_max > 0.0) || c.time_grid.n_points < 2) {
      throw ConfigError("time_grid needs t_max > 0 and n_points >= 2");
    }
    if (c.initial_state.kind == InitialState::Kind::W3 && c.chain.n_qubits != 3) {
      throw ConfigError("initial_state w3 requires n_qubits = 3");
    }
    if (c.initial_state.kind == InitialState::Kind::Gibbs && !(c.initial_state.beta > 0.0)) {
      throw ConfigError("initial_state gibbs:<beta> needs beta > 0");
    }
  }
  if (sweeping) {
    if (!(c.sweep.t_min > 0.0) || !(c.sweep.t_max >= c.sweep.t_min) || c.sweep.n_points < 1) {
      throw ConfigError("sweep needs 0 < t_min <= t_max and n_points >= 1");
    }
    if (!(c.sweep.ratio > 0.0)) throw ConfigError("sweep.ratio must be positive");
    if (c.chain.baths.size() != 2) throw ConfigError("sweeps need exactly two baths");
  }

  // Bath-coupled Bohr frequencies must be strictly positive.
  const double scale = 1e-9 * std::max(c.chain.epsilon, std::abs(c.chain.coupling)) * c.chain.n_qubits;
  auto check_frequencies = [scale](int n, double eps, double k) {
    for (const auto& f : model::tables::bath_frequencies(n, eps, k)) {
      if (!(f.value > scale)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "n_qubits = " << n << ": " << f.label << " = " << f.formula << " = " << f.value
            << " is not positive (epsilon = " << eps << ", K = " << k << ")";
        throw ConfigError(msg.str());
      }
    }
  };
  if (sweeping) {
    check_frequencies(2, c.chain.epsilon, c.chain.coupling);
    check_frequencies(3, c.chain.epsilon, c.chain.coupling);
  } else if (c.chain.n_qubits <= 3 && std::all_of(c.chain.baths.begin(), c.chain.baths.end(), [&c](const auto& b) {
               return b.site == 0 || b.site == c.chain.n_qubits - 1;
             })) {
    check_frequencies(c.chain.n_qubits, c.chain.epsilon, c.chain.coupling);
  } else {
    try {
      model::build_channels(c.chain);
    } catch (const FrequencyTooSmall& e) {
      throw ConfigError(e.what());
    }
  }
}

}  // namespace thermochain::experiment
