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
#include <chrono>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "thermochain/analysis.hpp"
#include "thermochain/experiment.hpp"

namespace thermochain::experiment {

namespace {

using model::ChainSpec;

CheckResult at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, "<=", measured <= threshold};
}

CheckResult at_least(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, ">=", measured >= threshold};
}

CheckResult greater(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, ">", measured > threshold};
}

CheckResult equal(std::string name, double measured, double expected) {
  return {std::move(name), measured, expected, "==", measured == expected};
}

double gamma_min(const ChainSpec& spec) {
  double g = spec.baths.front().gamma;
  for (const auto& b : spec.baths) g = std::min(g, b.gamma);
  return g;
}

bool has_closed_form(const ChainSpec& spec) {
  if (spec.n_qubits != 2 && spec.n_qubits != 3) return false;
  if (spec.n_qubits == 2 && !(spec.coupling > 0.0)) return false;
  return std::all_of(spec.baths.begin(), spec.baths.end(),
                     [&spec](const auto& b) { return b.site == 0 || b.site == spec.n_qubits - 1; });
}

DensityMatrix closed_form_state(const ChainSpec& spec, analysis::XConvention convention) {
  return spec.n_qubits == 2 ? analysis::analytic_steady_state_2q(spec, convention)
                            : analysis::analytic_steady_state_3q(spec, convention);
}

// Structural invariants of the generator and its channels.
void check_structure(const ChainSpec& spec, std::vector<CheckResult>& out) {
  const ComplexMatrix h = model::build_hamiltonian(spec);
  const auto decomp = model::diagonalize(h);
  const auto channels = model::build_channels(spec, decomp);
  const auto l = dynamics::build_liouvillian(h, channels);

  out.push_back(at_most("generator.trace_preservation", dynamics::trace_preservation_residual(l), 1e-12));
  out.push_back(at_most("generator.hermiticity_preservation", dynamics::hermiticity_preservation_residual(l), 1e-12));

  double identity = 0.0, balance = 0.0;
  double ordering = std::numeric_limits<double>::infinity();
  for (const auto& ch : channels) {
    const ComplexMatrix& v = ch.lowering_op;
    identity = std::max(identity, (h * v - v * h + ch.omega * v).norm());
    const double beta = spec.baths[ch.bath_index].beta;
    balance = std::max(balance, std::abs(ch.rate_up / ch.rate_down * std::exp(beta * ch.omega) - 1.0));
    ordering = std::min({ordering, ch.rate_up, ch.rate_down - ch.rate_up});
  }
  out.push_back(at_most("channels.eigenoperator_identity", identity, 1e-10));
  out.push_back(at_most("channels.detailed_balance", balance, 1e-14));
  out.push_back(greater("channels.rate_ordering", ordering, 0.0));

  double completeness = 0.0;
  for (std::size_t j = 0; j < spec.baths.size(); ++j) {
    ComplexMatrix sum = ComplexMatrix::Zero(h.rows(), h.cols());
    for (const auto& ch : channels) {
      if (ch.bath_index == static_cast<int>(j)) sum += ch.lowering_op;
    }
    const ComplexMatrix lowering = embed_site_operator(sigma_minus(), spec.baths[j].site, spec.n_qubits);
    completeness = std::max(completeness, (sum - lowering).norm());
  }
  out.push_back(at_most("channels.completeness", completeness, 1e-12));

  if (has_closed_form(spec)) {
    const auto tabled = dynamics::build_liouvillian(h, model::tables::channels_from_tables(spec));
    out.push_back(at_most("channels.closed_form_tables",
                          (tabled.generator() - l.generator()).cwiseAbs().maxCoeff(), 1e-12));
  }
}

void check_steady_state(const ExperimentConfig& c, std::vector<CheckResult>& out) {
  const ChainSpec& spec = c.chain;
  const auto l = dynamics::build_liouvillian(spec);
  const auto summary = dynamics::spectrum_summary(l);
  out.push_back(equal("steady_state.near_zero_eigenvalues", summary.near_zero_count, 1));
  out.push_back(greater("steady_state.spectral_gap", summary.gap, 1e-6 * gamma_min(spec)));
  const auto ss = dynamics::steady_state(l);
  out.push_back(at_most("steady_state.fixed_point",
                        dynamics::apply_generator(l, ss.state).norm() / l.generator().norm(), 1e-12));

  if (has_closed_form(spec)) {
    const auto convention =
        c.swap_rate_convention ? analysis::XConvention::Swapped : analysis::XConvention::Resolved;
    out.push_back(at_most("closed_form.oracle_equivalence", trace_distance(closed_form_state(spec, convention), ss.state),
                          1e-10));
    if (spec.n_qubits == 2) {
      out.push_back(at_most("closed_form.concurrence_identity",
                            std::abs(analysis::analytic_concurrence_2q(spec, convention) -
                                     analysis::concurrence(closed_form_state(spec, convention))),
                            1e-12));
    }
  }

  ChainSpec equilibrium = spec;
  for (auto& b : equilibrium.baths) b.beta = spec.baths.front().beta;
  const auto eq = dynamics::steady_state(dynamics::build_liouvillian(equilibrium));
  const auto gibbs = analysis::gibbs_state(model::build_hamiltonian(equilibrium), spec.baths.front().beta);
  out.push_back(at_most("steady_state.gibbs_limit", trace_distance(eq.state, gibbs), 1e-8));
}

void check_trajectory(const ExperimentConfig& c, std::vector<CheckResult>& out) {
  const ChainSpec& spec = c.chain;
  const ComplexMatrix h = model::build_hamiltonian(spec);
  const auto decomp = model::diagonalize(h);
  const auto l = dynamics::build_liouvillian(h, model::build_channels(spec, decomp));
  const DensityMatrix rho0 = spec.n_qubits == 3 ? analysis::w_state(3)
                                                : DensityMatrix::pure(decomp.eigenvectors.col(decomp.eigenvectors.cols() - 1));
  const double horizon = 50.0 / gamma_min(spec);
  std::vector<double> times;
  for (int k = 1; k <= 10; ++k) times.push_back(horizon * k / 10.0);

  dynamics::EvolveOptions rk;
  rk.rtol = c.tolerances.rtol;
  rk.atol = c.tolerances.atol;
  const auto raw = dynamics::propagate(l, rho0, times, rk);
  double trace_err = 0.0, herm = 0.0, lowest = std::numeric_limits<double>::infinity();
  for (const auto& rho : raw) {
    trace_err = std::max(trace_err, std::abs(rho.trace() - Complex{1.0, 0.0}));
    herm = std::max(herm, max_hermitian_deviation(rho));
    lowest = std::min(lowest, min_eigenvalue(rho));
  }
  out.push_back(at_most("trajectory.trace_conservation", trace_err, 1e-8));
  out.push_back(at_most("trajectory.hermiticity", herm, 1e-10));
  out.push_back(at_least("trajectory.positivity", lowest, -1e-9));

  if (l.dim() <= dynamics::kMaxSpectralDim) {
    const auto ss = dynamics::steady_state(l);
    out.push_back(at_most("trajectory.long_time_limit", trace_distance(hermitize(raw.back()), ss.state.matrix()), 1e-6));
  }
  if (l.has_generator()) {
    dynamics::EvolveOptions expm;
    expm.backend = dynamics::Backend::MatrixExponential;
    const auto reference = dynamics::propagate(l, rho0, times, expm);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, trace_distance(raw[i], reference[i]));
    out.push_back(at_most("trajectory.backend_agreement", worst, 1e-8));
  }
}

void check_random_grid(const ExperimentConfig& c, std::vector<CheckResult>& out) {
  const auto convention =
      c.swap_rate_convention ? analysis::XConvention::Swapped : analysis::XConvention::Resolved;
  for (int n : {2, 3}) {
    double oracle = 0.0, identity = 0.0, diagonality = 0.0, fixed_point = 0.0;
    int unique_failures = 0;
    for (const auto& spec : random_specs(n, 25, 0x7c3a11ULL + n)) {
      const ComplexMatrix h = model::build_hamiltonian(spec);
      const auto decomp = model::diagonalize(h);
      const auto l = dynamics::build_liouvillian(h, model::build_channels(spec, decomp));
      const auto summary = dynamics::spectrum_summary(l);
      if (summary.near_zero_count != 1 || !(summary.gap > 1e-6 * gamma_min(spec))) ++unique_failures;
      const auto ss = dynamics::steady_state(l);
      fixed_point = std::max(fixed_point, dynamics::apply_generator(l, ss.state).norm() / l.generator().norm());
      oracle = std::max(oracle, trace_distance(closed_form_state(spec, convention), ss.state));
      if (n == 2) {
        identity = std::max(identity, std::abs(analysis::analytic_concurrence_2q(spec, convention) -
                                               analysis::concurrence(closed_form_state(spec, convention))));
      } else {
        const ComplexMatrix in_basis = decomp.eigenvectors.adjoint() * ss.state.matrix() * decomp.eigenvectors;
        diagonality = std::max(diagonality, (in_basis - ComplexMatrix(in_basis.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
      }
    }
    const std::string prefix = "random_" + std::to_string(n) + "q.";
    out.push_back(equal(prefix + "uniqueness_failures", unique_failures, 0));
    out.push_back(at_most(prefix + "fixed_point", fixed_point, 1e-12));
    out.push_back(at_most(prefix + "oracle_equivalence", oracle, 1e-10));
    if (n == 2) out.push_back(at_most(prefix + "concurrence_identity", identity, 1e-12));
    if (n == 3) out.push_back(at_most(prefix + "eigenbasis_diagonality", diagonality, 1e-10));
  }
}

void check_kernels(std::vector<CheckResult>& out) {
  const auto spec = ChainSpec::end_coupled(5, 3.0, 1.0, 0.02, 5.0, 0.03, 3.0);
  const auto l = dynamics::build_liouvillian(spec);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  ComplexMatrix x(l.system_dim(), l.system_dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex{normal(rng), normal(rng)};
  ComplexMatrix a, b;
  kernels::serial::lindblad_rhs(l.terms(), x, a);
  kernels::omp::lindblad_rhs(l.terms(), x, b);
  out.push_back(at_most("kernels.serial_vs_parallel_rhs", (a - b).cwiseAbs().maxCoeff(), 0.0));
}

}  // namespace

std::vector<ChainSpec> random_specs(int n_qubits, int count, unsigned long long seed) {
  if (n_qubits != 2 && n_qubits != 3) throw Unsupported("random_specs covers 2 and 3 qubits");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };
  const double k_limit = n_qubits == 2 ? 0.95 : 0.95 / std::sqrt(2.0);
  std::vector<ChainSpec> specs;
  for (int i = 0; i < count; ++i) {
    const double eps = 0.5 + 2.5 * unit(rng);
    const double k = eps * k_limit * (0.02 + 0.98 * unit(rng));
    const double g1 = log_uniform(1e-3, 0.1), b1 = log_uniform(0.2, 20.0);
    const double g2 = log_uniform(1e-3, 0.1), b2 = log_uniform(0.2, 20.0);
    specs.push_back(ChainSpec::end_coupled(n_qubits, eps, k, g1, b1, g2, b2));
  }
  return specs;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_json(const ExperimentConfig& config) const {
  nlohmann::ordered_json doc;
  doc["passed"] = all_passed();
  doc["runtime_seconds"] = runtime_seconds;
  doc["config"] = to_yaml(config);
  auto& list = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["measured"] = c.measured;
    item["relation"] = c.relation;
    item["threshold"] = c.threshold;
    item["passed"] = c.passed;
    list.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

ValidationReport run_validate(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  ValidationReport report;
  check_structure(config.chain, report.checks);
  if (dynamics::build_liouvillian(config.chain).dim() <= dynamics::kMaxSpectralDim) {
    check_steady_state(config, report.checks);
  }
  check_trajectory(config, report.checks);
  check_random_grid(config, report.checks);
  check_kernels(report.checks);
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace thermochain::experiment
