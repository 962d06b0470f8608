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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Tolerances are pinned here and nowhere else.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "thermochain/analysis.hpp"
#include "thermochain/dynamics.hpp"
#include "thermochain/experiment.hpp"

using namespace thermochain;
using model::ChainSpec;

namespace {

constexpr int kRandomSpecs = 100;
constexpr double kOracleTol = 1e-10;         // 1, 3
constexpr double kIdentityTol = 1e-12;       // 2
constexpr double kMaxSeconds2q = 10.0;       // 1
constexpr double kMaxSeconds3q = 60.0;       // 3
constexpr double kGibbsTol = 1e-8;           // 4
constexpr double kNullFactor = 1e-10;        // 5: |λ| < 1e-10 ‖L‖
constexpr double kGapFactor = 1e-6;          // 5: gap > 1e-6 γ_min
constexpr double kLongTime = 2500.0;         // 6
constexpr double kLongTimeTol = 1e-6;        // 6, 7
constexpr double kBackendTol = 1e-8;         // 6
constexpr double kValidateSeconds = 120.0;   // 11
constexpr double kBathGamma = 1.0 / 50;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double gamma_min(const ChainSpec& s) {
  return std::min(s.baths[0].gamma, s.baths[1].gamma);
}

// Uniqueness bookkeeping shared by criteria 1-4 and reported as 5.
struct Uniqueness {
  int checked = 0;
  int failures = 0;
  double worst_gap_ratio = 1e300;  // gap / γ_min
  void record(const dynamics::Liouvillian& l, const ChainSpec& spec) {
    const auto s = dynamics::spectrum_summary(l);
    int near_zero = 0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      if (std::abs(s.eigenvalues(i)) < kNullFactor * s.generator_norm) ++near_zero;
    }
    ++checked;
    const double ratio = s.gap / gamma_min(spec);
    worst_gap_ratio = std::min(worst_gap_ratio, ratio);
    if (near_zero != 1 || !(s.gap > kGapFactor * gamma_min(spec))) ++failures;
  }
} uniqueness;

std::mt19937_64 rng(8675309);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
double log_uniform(double lo, double hi) { return lo * std::pow(hi / lo, uniform(0.0, 1.0)); }

// ε > K > 0 (n=2) or ε > √2 K (n=3); γ in [1e-3, 0.1]; β in [0.2, 20].
ChainSpec random_spec(int n) {
  const double eps = log_uniform(0.2, 5.0);
  const double k_max = n == 2 ? eps : eps / std::sqrt(2.0);
  const double k = k_max * uniform(0.01, 0.99);
  return ChainSpec::end_coupled(n, eps, k, log_uniform(1e-3, 0.1), log_uniform(0.2, 20.0), log_uniform(1e-3, 0.1),
                                log_uniform(0.2, 20.0));
}

std::vector<ChainSpec> two_qubit_grid;

Outcome criterion_1() {
  Timer timer;
  double worst = 0.0;
  for (int i = 0; i < kRandomSpecs; ++i) two_qubit_grid.push_back(random_spec(2));
  for (const auto& spec : two_qubit_grid) {
    const auto l = dynamics::build_liouvillian(spec);
    uniqueness.record(l, spec);
    worst = std::max(worst, trace_distance(analysis::analytic_steady_state_2q(spec), dynamics::steady_state(l).state));
  }
  const double t = timer.seconds();
  return {worst <= kOracleTol && t < kMaxSeconds2q,
          fmt("%d specs, max trace distance %.2e (<= 1e-10), ", kRandomSpecs, worst) + fmt("%.2f s (< 10 s)", t)};
}

Outcome criterion_2() {
  double worst = 0.0;
  for (const auto& spec : two_qubit_grid) {
    worst = std::max(worst, std::abs(analysis::analytic_concurrence_2q(spec) -
                                     analysis::concurrence(analysis::analytic_steady_state_2q(spec))));
  }
  return {worst <= kIdentityTol, fmt("%zu specs, max |closed form - Wootters| %.2e (<= 1e-12)",
                                     two_qubit_grid.size(), worst)};
}

Outcome criterion_3() {
  Timer timer;
  double off_diagonal = 0.0, populations = 0.0;
  for (int i = 0; i < kRandomSpecs; ++i) {
    const auto spec = random_spec(3);
    const auto l = dynamics::build_liouvillian(spec);
    uniqueness.record(l, spec);
    const auto numeric = dynamics::steady_state(l).state.matrix();
    const auto table = model::tables::three_qubit_eigensystem(spec.epsilon, spec.coupling);
    ComplexMatrix u(8, 8);
    for (int k = 0; k < 8; ++k) u.col(k) = table[k].vector;
    const ComplexMatrix in_basis = u.adjoint() * numeric * u;
    const RealVector expected = analysis::analytic_populations_3q(spec);
    for (int a = 0; a < 8; ++a) {
      populations = std::max(populations, std::abs(in_basis(a, a).real() - expected(a)));
      for (int b = 0; b < 8; ++b) {
        if (a != b) off_diagonal = std::max(off_diagonal, std::abs(in_basis(a, b)));
      }
    }
  }
  const double t = timer.seconds();
  return {off_diagonal <= kOracleTol && populations <= kOracleTol && t < kMaxSeconds3q,
          fmt("max off-diagonal %.2e, max population error %.2e (<= 1e-10), ", off_diagonal, populations) +
              fmt("%.2f s (< 60 s)", t)};
}

Outcome criterion_4() {
  double worst = 0.0;
  int points = 0;
  for (int n : {2, 3}) {
    for (double beta : {0.2, 0.7, 2.0, 6.0, 20.0}) {
      for (double ratio : {1.5, 2.0, 3.0, 5.0, 10.0}) {
        const auto spec = ChainSpec::end_coupled(n, ratio, 1.0, 0.02, beta, 0.05, beta);
        const auto l = dynamics::build_liouvillian(spec);
        uniqueness.record(l, spec);
        // e^{-β(H - E_0)} / Z by the matrix exponential.
        const ComplexMatrix h = model::build_hamiltonian(spec);
        const double e0 = hermitian_eig(h).values(0);
        const ComplexMatrix w = (-beta * (h - e0 * ComplexMatrix::Identity(h.rows(), h.cols()))).exp();
        worst = std::max(worst, trace_distance(dynamics::steady_state(l).state.matrix(), w / w.trace()));
        ++points;
      }
    }
  }
  return {worst <= kGibbsTol, fmt("%d points (n = 2, 3 on 5 beta x 5 eps/K), max trace distance %.2e (<= 1e-8)",
                                  points, worst)};
}

Outcome criterion_5() {
  return {uniqueness.checked > 0 && uniqueness.failures == 0,
          fmt("%d generators, %d with a second null eigenvalue or small gap; min gap/gamma_min %.3g (> 1e-6)",
              uniqueness.checked, uniqueness.failures, uniqueness.worst_gap_ratio)};
}

ChainSpec reference_chain(double beta_first, double beta_last) {
  return ChainSpec::end_coupled(3, 1.5, 1.0, kBathGamma, beta_first, kBathGamma, beta_last);
}

Outcome criterion_6() {
  double worst_limit = 0.0, worst_backend = 0.0;
  std::vector<double> checkpoints;
  for (int k = 1; k <= 10; ++k) checkpoints.push_back(250.0 * k);
  for (auto [b1, b2] : {std::pair{10.0, 10.0}, std::pair{5.0, 5.0}, std::pair{5.0, 3.0}}) {
    const auto l = dynamics::build_liouvillian(reference_chain(b1, b2));
    const auto rho0 = analysis::w_state(3);
    const auto rk = dynamics::evolve(l, rho0, checkpoints);
    dynamics::EvolveOptions expm;
    expm.backend = dynamics::Backend::MatrixExponential;
    const auto ex = dynamics::evolve(l, rho0, checkpoints, expm);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      worst_backend = std::max(worst_backend, trace_distance(rk[i], ex[i]));
    }
    worst_limit = std::max(worst_limit, trace_distance(rk.back(), dynamics::steady_state(l).state));
  }
  return {worst_limit <= kLongTimeTol && worst_backend <= kBackendTol,
          fmt("t = %.0f: max distance to steady state %.2e (<= 1e-6); ", kLongTime, worst_limit) +
              fmt("backends at t = 250..2500: max %.2e (<= 1e-8)", worst_backend)};
}

Outcome criterion_7() {
  const double dt = 1.0;  // <= 1/γ = 50
  const auto l = dynamics::build_liouvillian(reference_chain(5.0, 3.0));
  std::vector<double> times;
  for (int k = 0; k * dt <= kLongTime; ++k) times.push_back(k * dt);
  const auto traj = dynamics::evolve(l, analysis::w_state(3), times);
  std::vector<double> c;
  for (const auto& rho : traj) c.push_back(analysis::concurrence_first_last(rho, 3));
  const double c_inf = analysis::concurrence_first_last(dynamics::steady_state(l).state, 3);

  // Exchange oscillations make C touch zero briefly early on; the dead
  // interval is the longest run of exact zeros.
  const bool starts = std::abs(c[0] - 2.0 / 3.0) <= 1e-12 && *std::max_element(c.begin() + 1, c.end()) < c[0];
  std::size_t death = c.size(), birth = c.size(), best = 0;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == 0.0) ++j;
    if (j - i > best) {
      best = j - i;
      death = i;
      birth = j;
    }
    i = j == i ? i + 1 : j;
  }
  const bool dead_interval = best >= 2;  // duration (best - 1) dt > 0
  const bool revives = birth < c.size() && c[birth] > 0.0 && c.back() > 0.0;
  const double final_error = std::abs(c.back() - c_inf);
  std::ostringstream detail;
  detail << "C(0) = " << c[0] << ", C = 0 exactly on t in [" << (death < c.size() ? times[death] : -1.0) << ", "
         << (birth < c.size() ? times[birth - 1] : -1.0) << "] (dt = " << dt << "), positive from t = "
         << (birth < c.size() ? times[birth] : -1.0) << fmt(", |C(2500) - C_inf| = %.2e (<= 1e-6)", final_error);
  return {starts && dead_interval && revives && final_error <= kLongTimeTol, detail.str()};
}

// Rows of a compare CSV as (T1, C2, C3).
std::vector<std::array<double, 3>> sweep(double ratio) {
  auto config = experiment::load_config(std::nullopt, {"mode=sweep-nonequilibrium", "sweep.ratio=" + std::to_string(ratio)});
  std::istringstream csv(experiment::run_compare_2v3(config));
  std::vector<std::array<double, 3>> rows;
  for (std::string line; std::getline(csv, line);) {
    if (line.empty() || line[0] == '#' || line[0] == 'T') continue;
    std::array<double, 5> v{};
    std::istringstream cells(line);
    std::string cell;
    for (double& x : v) {
      std::getline(cells, cell, ',');
      x = std::stod(cell);
    }
    rows.push_back({v[0], v[2], v[3]});
  }
  return rows;
}

Outcome criterion_8() {
  bool all = true;
  std::string detail;
  for (double ratio : {1.0, 1.5, 2.0}) {
    const auto rows = sweep(ratio);
    double lo = -1.0, hi = -1.0;
    for (const auto& r : rows) {
      if (r[2] > r[1]) {
        if (lo < 0.0) lo = r[0];
        hi = r[0];
      }
    }
    all = all && lo > 0.0;
    detail += fmt("T2/T1 = %.1f: C3 > C2 for T1 in [%.3f, %.3f]; ", ratio, lo, hi);
  }
  detail += "eps = 1.5, K = 1, 200-point grid T1 in [0.05, 3]";
  return {all, detail};
}

double steady_c(int n, double eps, double t1, double t2) {
  const auto spec = ChainSpec::end_coupled(n, eps, 1.0, kBathGamma, 1.0 / t1, kBathGamma, 1.0 / t2);
  return analysis::concurrence_first_last(dynamics::steady_state(dynamics::build_liouvillian(spec)).state, n);
}

Outcome criterion_9() {
  bool all = true;
  double worst_excess = -1e300;
  int rows = 0, flat_zero = 0;
  for (int n : {2, 3}) {
    for (double mean : {0.3, 0.5, 1.0}) {
      const double at_equilibrium = steady_c(n, 1.5, mean, mean);
      bool all_zero = at_equilibrium == 0.0;
      for (double rel : {-0.5, -0.2, 0.2, 0.5}) {
        const double delta = rel * mean;
        const double c = steady_c(n, 1.5, mean - delta / 2, mean + delta / 2);
        worst_excess = std::max(worst_excess, c - at_equilibrium);
        all = all && c <= at_equilibrium + 1e-12;
        all_zero = all_zero && c == 0.0;
      }
      ++rows;
      if (all_zero) ++flat_zero;
    }
  }
  return {all, fmt("n = 2, 3; mean T in {0.3, 0.5, 1.0}; dT/T in {0, +-0.2, +-0.5}; max C(dT) - C(0) = %.3e (<= 0); ",
                   worst_excess) +
                   fmt("%d of %d rows are identically 0", flat_zero, rows)};
}

Outcome criterion_10() {
  const double t = 0.2;
  bool all = true;
  std::string detail = fmt("T = %.2f: ", t);
  for (int n : {2, 3}) {
    const double c15 = steady_c(n, 1.5, t, t), c2 = steady_c(n, 2.0, t, t);
    all = all && c15 > 0.0 && c2 <= c15;
    detail += fmt("%sn = %d: C(eps/K=2) = %.4f <= C(eps/K=1.5) = %.4f", n == 2 ? "" : "; ", n, c2, c15);
  }
  return {all, detail};
}

Outcome criterion_11() {
  Timer timer;
  const std::string report = (std::filesystem::temp_directory_path() / "thermochain_acceptance_report.json").string();
  const std::string cmd = std::string(THERMOCHAIN_CLI) + " validate --output " + report + " > /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const double seconds = timer.seconds();
  return {code == 0 && seconds < kValidateSeconds,
          fmt("validate exit code %d (== 0), %.2f s (< 120 s)", code, seconds) + ", report " + report};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"two-qubit oracle equivalence", criterion_1},
      {"concurrence formula identity", criterion_2},
      {"three-qubit steady state", criterion_3},
      {"Gibbs limit", criterion_4},
      {"uniqueness certificate", criterion_5},
      {"dynamics convergence", criterion_6},
      {"sudden death and birth", criterion_7},
      {"crossover interval", criterion_8},
      {"equilibrium maximality", criterion_9},
      {"monotonicity in eps/K", criterion_10},
      {"structural invariants via validate", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
