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
#include <fstream>
#include <limits>
#include <sstream>

#include "thermochain/analysis.hpp"
#include "thermochain/experiment.hpp"

namespace thermochain::experiment {

namespace {

std::string header_block(const ExperimentConfig& c) {
  std::istringstream yaml(to_yaml(c));
  std::string out, line;
  while (std::getline(yaml, line)) out += "# " + line + "\n";
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

// One matrix row per line, each entry as a "re im" pair; '#' starts a comment.
DensityMatrix read_state_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open initial-state file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double x;
    while (fields >> x) values.push_back(x);
    if (!fields.eof()) throw ConfigError("non-numeric entry in initial-state file '" + path + "'");
  }
  if (values.size() != 2u * dim * dim) {
    throw ConfigError("initial-state file '" + path + "' must hold " + std::to_string(dim) + "x" +
                      std::to_string(dim) + " complex entries");
  }
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const std::size_t k = 2u * (static_cast<std::size_t>(r) * dim + c);
      m(r, c) = Complex{values[k], values[k + 1]};
    }
  }
  try {
    return DensityMatrix(m);
  } catch (const InvalidDensityMatrix& e) {
    throw ConfigError("initial-state file '" + path + "': " + e.what());
  }
}

DensityMatrix make_initial_state(const ExperimentConfig& c, const model::SpectralDecomposition& decomp,
                                 const ComplexMatrix& h) {
  const int dim = static_cast<int>(h.rows());
  switch (c.initial_state.kind) {
    case InitialState::Kind::W3:
      return analysis::w_state(c.chain.n_qubits);
    case InitialState::Kind::Ground:
      return DensityMatrix::pure(decomp.eigenvectors.col(0));
    case InitialState::Kind::Gibbs:
      return analysis::gibbs_state(h, c.initial_state.beta);
    case InitialState::Kind::CustomFile:
      return read_state_file(c.initial_state.path, dim);
  }
  throw ConfigError("unknown initial state");
}

RealVector eigenbasis_populations(const ComplexMatrix& rho, const ComplexMatrix& u) {
  const ComplexMatrix in_basis = u.adjoint() * rho * u;
  return in_basis.diagonal().real();
}

bool has_closed_form(const model::ChainSpec& spec) {
  if (spec.n_qubits != 2 && spec.n_qubits != 3) return false;
  if (spec.n_qubits == 2 && !(spec.coupling > 0.0)) return false;
  for (const auto& b : spec.baths) {
    if (b.site != 0 && b.site != spec.n_qubits - 1) return false;
  }
  return true;
}

bool equal_temperatures(const model::ChainSpec& spec) {
  for (const auto& b : spec.baths) {
    if (b.beta != spec.baths.front().beta) return false;
  }
  return true;
}

double steady_concurrence(int n, const ExperimentConfig& c, double t_first, double t_last) {
  const auto& baths = c.chain.baths;
  const auto spec =
      model::ChainSpec::end_coupled(n, c.chain.epsilon, c.chain.coupling, baths[0].gamma, 1.0 / t_first,
                                    baths[1].gamma, 1.0 / t_last);
  const auto ss = dynamics::steady_state(dynamics::build_liouvillian(spec));
  return analysis::concurrence_first_last(ss.state, n);
}

}  // namespace

std::string run_dynamics(const ExperimentConfig& c) {
  validate_config(c);
  const ComplexMatrix h = model::build_hamiltonian(c.chain);
  const auto decomp = model::diagonalize(h);
  const auto l = dynamics::build_liouvillian(h, model::build_channels(c.chain, decomp));
  const DensityMatrix rho0 = make_initial_state(c, decomp, h);
  const auto times = linspace(0.0, c.time_grid.t_max, c.time_grid.n_points);

  dynamics::EvolveOptions options;
  options.backend = c.tolerances.backend;
  options.rtol = c.tolerances.rtol;
  options.atol = c.tolerances.atol;
  const auto trajectory = dynamics::evolve(l, rho0, times, options);

  const int dim = static_cast<int>(h.rows());
  std::ostringstream csv;
  csv << header_block(c);
  csv << "t,C_first_last,purity";
  for (int k = 0; k < dim; ++k) csv << ",pop_" << k;
  csv << ",trace_error\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const ComplexMatrix& rho = trajectory[i].matrix();
    const double purity = (rho * rho).trace().real();
    const RealVector pops = eigenbasis_populations(rho, decomp.eigenvectors);
    csv << format_number(times[i]) << ',' << format_number(analysis::concurrence_first_last(trajectory[i], c.chain.n_qubits))
        << ',' << format_number(purity);
    for (int k = 0; k < dim; ++k) csv << ',' << format_number(pops(k));
    csv << ',' << format_number(std::abs(rho.trace() - Complex{1.0, 0.0})) << '\n';
  }
  return csv.str();
}

std::string run_steady(const ExperimentConfig& c) {
  validate_config(c);
  const ComplexMatrix h = model::build_hamiltonian(c.chain);
  const auto decomp = model::diagonalize(h);
  const auto l = dynamics::build_liouvillian(h, model::build_channels(c.chain, decomp));
  const auto ss = dynamics::steady_state(l);
  const int n = c.chain.n_qubits;
  const int dim = static_cast<int>(h.rows());
  const ComplexMatrix& u = decomp.eigenvectors;

  const ComplexMatrix in_basis = u.adjoint() * ss.state.matrix() * u;
  double max_coherence = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < dim; ++k) {
      if (r != k) max_coherence = std::max(max_coherence, std::abs(in_basis(r, k)));
    }
  }
  const RealVector pops = in_basis.diagonal().real();
  const double c_numeric = analysis::concurrence_first_last(ss.state, n);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto convention =
      c.swap_rate_convention ? analysis::XConvention::Swapped : analysis::XConvention::Resolved;
  double c_analytic = nan;
  RealVector pops_analytic = RealVector::Constant(dim, nan);
  if (has_closed_form(c.chain)) {
    const DensityMatrix analytic = n == 2 ? analysis::analytic_steady_state_2q(c.chain, convention)
                                          : analysis::analytic_steady_state_3q(c.chain, convention);
    c_analytic = n == 2 ? analysis::analytic_concurrence_2q(c.chain, convention)
                        : analysis::concurrence_first_last(analytic, n);
    pops_analytic = eigenbasis_populations(analytic.matrix(), u);
  }
  RealVector pops_gibbs = RealVector::Constant(dim, nan);
  if (equal_temperatures(c.chain)) {
    pops_gibbs = eigenbasis_populations(analysis::gibbs_state(h, c.chain.baths.front().beta).matrix(), u);
  }

  std::ostringstream csv;
  csv << header_block(c);
  csv << "n_qubits,spectral_gap,C_numeric,C_analytic,abs_diff,max_coherence";
  for (int k = 0; k < dim; ++k) csv << ",pop_" << k;
  for (int k = 0; k < dim; ++k) csv << ",pop_analytic_" << k;
  for (int k = 0; k < dim; ++k) csv << ",pop_gibbs_" << k;
  csv << '\n';
  csv << n << ',' << format_number(ss.gap) << ',' << format_number(c_numeric) << ',' << format_number(c_analytic)
      << ',' << format_number(std::abs(c_numeric - c_analytic)) << ',' << format_number(max_coherence);
  for (int k = 0; k < dim; ++k) csv << ',' << format_number(pops(k));
  for (int k = 0; k < dim; ++k) csv << ',' << format_number(pops_analytic(k));
  for (int k = 0; k < dim; ++k) csv << ',' << format_number(pops_gibbs(k));
  csv << '\n';
  return csv.str();
}

std::string run_compare_2v3(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  if (c.mode == Mode::SweepEquilibrium) c.sweep.ratio = 1.0;
  validate_config(c);
  const auto temps = linspace(c.sweep.t_min, c.sweep.t_max, c.sweep.n_points);

  struct Row {
    double c2 = 0.0;
    double c3 = 0.0;
  };
  const auto rows = kernels::omp::map_indexed<Row>(temps.size(), [&](std::size_t i) {
    const double t1 = temps[i];
    const double t2 = c.sweep.ratio * t1;
    return Row{steady_concurrence(2, c, t1, t2), steady_concurrence(3, c, t1, t2)};
  });

  std::ostringstream csv;
  csv << header_block(c);
  csv << "T1,T2,C_2qubit,C_3qubit,difference\n";
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const double t1 = temps[i];
    csv << format_number(t1) << ',' << format_number(c.sweep.ratio * t1) << ',' << format_number(rows[i].c2) << ','
        << format_number(rows[i].c3) << ',' << format_number(rows[i].c3 - rows[i].c2) << '\n';
  }
  return csv.str();
}

}  // namespace thermochain::experiment
