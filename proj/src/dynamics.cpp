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

#include "thermochain/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace thermochain::dynamics {

namespace {

std::string describe(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Trajectory outputs: trace is never renormalized, so allow drift up to 1e-8.
constexpr StateTolerances kTrajectoryTolerances{1e-12, 1e-8, -1e-6};

DensityMatrix checked_output(const ComplexMatrix& rho) {
  const double drift = std::abs(rho.trace() - Complex{1.0, 0.0});
  if (drift > kTrajectoryTolerances.trace) {
    throw ToleranceNotMet("trace drifted by " + describe(drift) + " during propagation");
  }
  const ComplexMatrix h = hermitize(rho);
  const double lowest = min_eigenvalue(h);
  if (lowest < kTrajectoryTolerances.min_eigenvalue) {
    throw PositivityLost("propagated state has eigenvalue " + describe(lowest) +
                         "; integrator tolerances are too loose");
  }
  return DensityMatrix(h, kTrajectoryTolerances);
}

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw InvalidSpec("evolve: times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw InvalidSpec("evolve: times must be ascending");
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (difference between 5th and embedded 4th order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

std::vector<ComplexMatrix> propagate_runge_kutta(const Liouvillian& l, const DensityMatrix& rho0,
                                                std::span<const double> times, const EvolveOptions& opt) {
  const auto& terms = l.terms();
  const int d = l.system_dim();
  auto rhs = [&terms](const ComplexMatrix& x, ComplexMatrix& out) { kernels::omp::lindblad_rhs(terms, x, out); };

  std::vector<ComplexMatrix> out;
  out.reserve(times.size());
  ComplexMatrix y = rho0.matrix();
  double t = 0.0;

  std::array<ComplexMatrix, 7> k;
  for (auto& m : k) m.resize(d, d);
  ComplexMatrix stage(d, d), y_new(d, d), err(d, d);
  rhs(y, k[0]);

  // Initial step from the generator's operator scale.
  const double scale = std::max(terms.effective_h.cwiseAbs().maxCoeff(), 1e-12);
  double h = 0.01 / scale;
  long long steps = 0;

  for (double target : times) {
    while (t < target) {
      if (++steps > opt.max_steps) throw ToleranceNotMet("evolve: step budget exhausted");
      bool last = false;
      double step = h;
      if (t + step >= target) {
        step = target - t;
        last = true;
      }
      stage = y + step * (a21 * k[0]);
      rhs(stage, k[1]);
      stage = y + step * (a31 * k[0] + a32 * k[1]);
      rhs(stage, k[2]);
      stage = y + step * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
      rhs(stage, k[3]);
      stage = y + step * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
      rhs(stage, k[4]);
      stage = y + step * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
      rhs(stage, k[5]);
      y_new = y + step * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
      rhs(y_new, k[6]);
      err = step * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);

      double err_norm = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
          const double sc = opt.atol + opt.rtol * std::max(std::abs(y(r, c)), std::abs(y_new(r, c)));
          err_norm = std::max(err_norm, std::abs(err(r, c)) / sc);
        }
      }

      if (err_norm <= 1.0) {
        t = last ? target : t + step;
        y.swap(y_new);
        k[0].swap(k[6]);
      }
      const double factor =
          err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      // A shortened final step says nothing about the natural step size.
      if (!(last && err_norm <= 1.0)) h = step * factor;
      if (h < 1e-14 * std::max(1.0, t)) {
        throw ToleranceNotMet("evolve: step size underflow at t = " + describe(t));
      }
    }
    out.push_back(y);
  }
  return out;
}

std::vector<ComplexMatrix> propagate_expm(const Liouvillian& l, const DensityMatrix& rho0,
                                          std::span<const double> times) {
  const ComplexMatrix& g = l.generator();
  const int d = l.system_dim();
  std::vector<ComplexMatrix> out;
  out.reserve(times.size());
  ComplexVector x = vectorize(rho0.matrix());
  ComplexVector next(x.size());
  double t = 0.0;
  for (double target : times) {
    if (target > t) {
      const ComplexMatrix propagator = (g * (target - t)).exp();
      kernels::omp::superop_matvec(propagator, x, next);
      x.swap(next);
      t = target;
    }
    out.push_back(unvectorize(x, d));
  }
  return out;
}

}  // namespace

const ComplexMatrix& Liouvillian::generator() const {
  if (!has_generator()) {
    throw Unsupported("dense generator not built for superoperator dimension " + std::to_string(dim()));
  }
  return generator_;
}

Liouvillian build_liouvillian(const ComplexMatrix& h, std::vector<model::JumpChannel> channels) {
  if (h.rows() != h.cols()) throw DimMismatch("Hamiltonian is not square");
  const int d = static_cast<int>(h.rows());
  for (const auto& ch : channels) {
    if (ch.lowering_op.rows() != d || ch.lowering_op.cols() != d) {
      throw DimMismatch("jump operator dimension does not match the Hamiltonian");
    }
  }

  Liouvillian l;
  l.hamiltonian_ = h;
  l.channels_ = std::move(channels);

  const Complex im{0.0, 1.0};
  ComplexMatrix heff = h;
  for (const auto& ch : l.channels_) {
    const ComplexMatrix& v = ch.lowering_op;
    const ComplexMatrix vdag = v.adjoint();
    heff -= 0.5 * im * (ch.rate_down * (vdag * v) + ch.rate_up * (v * vdag));
    l.terms_.jumps.push_back({v, vdag, ch.rate_down});
    l.terms_.jumps.push_back({vdag, v, ch.rate_up});
  }
  l.terms_.effective_h = heff;
  l.terms_.effective_h_adjoint = heff.adjoint();

  if (d * d <= kMaxGeneratorDim) {
    // L(ρ) = (-i H_eff) ρ I + I ρ (i H_eff†) + Σ rate J ρ J†
    std::vector<kernels::Sandwich> sandwiches;
    sandwiches.push_back({-im * heff, identity(d)});
    sandwiches.push_back({identity(d), im * l.terms_.effective_h_adjoint});
    for (const auto& jump : l.terms_.jumps) sandwiches.push_back({jump.rate * jump.op, jump.op_adjoint});
    l.generator_ = kernels::omp::assemble_superoperator(sandwiches, d);
  }
  return l;
}

Liouvillian build_liouvillian(const model::ChainSpec& spec) {
  const ComplexMatrix h = model::build_hamiltonian(spec);
  return build_liouvillian(h, model::build_channels(spec, model::diagonalize(h)));
}

ComplexMatrix apply_generator(const Liouvillian& l, const ComplexMatrix& rho) {
  if (rho.rows() != l.system_dim() || rho.cols() != l.system_dim()) {
    throw DimMismatch("apply_generator: state dimension does not match the generator");
  }
  ComplexMatrix out;
  kernels::omp::lindblad_rhs(l.terms(), rho, out);
  return out;
}

ComplexMatrix apply_generator(const Liouvillian& l, const DensityMatrix& rho) {
  return apply_generator(l, rho.matrix());
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw DimMismatch("unvectorize: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

std::vector<ComplexMatrix> propagate(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times,
                                     const EvolveOptions& options) {
  if (rho0.dim() != l.system_dim()) throw DimMismatch("evolve: initial state dimension mismatch");
  check_times(times);
  if (!(options.rtol > 0.0) || !(options.atol > 0.0)) throw InvalidSpec("evolve: tolerances must be positive");
  if (options.backend == Backend::MatrixExponential) return propagate_expm(l, rho0, times);
  return propagate_runge_kutta(l, rho0, times, options);
}

std::vector<DensityMatrix> evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times,
                                  const EvolveOptions& options) {
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (const auto& raw : propagate(l, rho0, times, options)) out.push_back(checked_output(raw));
  return out;
}

SpectrumSummary spectrum_summary(const Liouvillian& l) {
  if (l.dim() > kMaxSpectralDim) {
    throw Unsupported("dense spectral analysis limited to superoperator dimension " +
                      std::to_string(kMaxSpectralDim) + " (4 qubits)");
  }
  const ComplexMatrix& g = l.generator();
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(g, false);
  if (solver.info() != Eigen::Success) throw ToleranceNotMet("generator eigensolver did not converge");
  ComplexVector values = solver.eigenvalues();
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](Eigen::Index a, Eigen::Index b) { return std::abs(values(a)) < std::abs(values(b)); });

  SpectrumSummary s;
  s.eigenvalues.resize(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) s.eigenvalues(i) = values(order[i]);
  s.generator_norm = g.norm();
  s.gap_floor = 1e-10 * s.generator_norm;
  s.near_zero_count = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (std::abs(s.eigenvalues(i)) < s.gap_floor) ++s.near_zero_count;
  }
  s.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) s.gap = std::min(s.gap, std::abs(s.eigenvalues(i).real()));
  return s;
}

namespace {

void require_unique(const SpectrumSummary& s) {
  if (s.near_zero_count > 1) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "steady state is not unique: " << s.near_zero_count << " eigenvalues below " << s.gap_floor
        << "; two smallest magnitudes " << std::abs(s.eigenvalues(0)) << ", " << std::abs(s.eigenvalues(1));
    throw DegenerateSteadyState(msg.str());
  }
}

}  // namespace

SteadyState steady_state(const Liouvillian& l) {
  const SpectrumSummary summary = spectrum_summary(l);
  require_unique(summary);

  const ComplexMatrix& g = l.generator();
  const int d = l.system_dim();
  const Eigen::Index n = g.rows();

  // The spectrum certifies a one-dimensional null space, so appending the
  // trace row makes [G; Tr] x = [0; 1] full column rank with the steady state
  // as its exact solution. Two refinement sweeps polish the QR solve.
  ComplexMatrix bordered(n + 1, n);
  bordered.topRows(n) = g;
  bordered.row(n).setZero();
  for (int i = 0; i < d; ++i) bordered(n, i + static_cast<Eigen::Index>(d) * i) = 1.0;
  const Eigen::ColPivHouseholderQR<ComplexMatrix> qr(bordered);

  ComplexVector rhs = ComplexVector::Zero(n + 1);
  rhs(n) = 1.0;
  ComplexVector x = qr.solve(rhs);
  for (int iter = 0; iter < 2; ++iter) {
    const ComplexVector residual = bordered * x - rhs;
    x -= qr.solve(residual);
  }

  ComplexMatrix rho = unvectorize(x, d);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-8) throw DegenerateSteadyState("null vector has vanishing trace");
  rho = hermitize(rho / tr);
  rho /= rho.trace().real();
  return {DensityMatrix(rho), summary.gap};
}

double spectral_gap(const Liouvillian& l) {
  const SpectrumSummary summary = spectrum_summary(l);
  require_unique(summary);
  return summary.gap;
}

namespace {

// Matrix units E_mn sampled for the structural checks; all of them for small
// systems, an evenly strided subset otherwise.
std::vector<std::pair<int, int>> unit_sample(int d) {
  std::vector<std::pair<int, int>> out;
  const int stride = d <= 16 ? 1 : d / 8;
  for (int m = 0; m < d; m += stride) {
    for (int n = 0; n < d; n += stride) out.emplace_back(m, n);
  }
  return out;
}

}  // namespace

double trace_preservation_residual(const Liouvillian& l) {
  const int d = l.system_dim();
  double worst = 0.0;
  if (l.has_generator()) {
    const ComplexMatrix& g = l.generator();
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      Complex sum{0.0, 0.0};
      for (int i = 0; i < d; ++i) sum += g(i + static_cast<Eigen::Index>(d) * i, c);
      worst = std::max(worst, std::abs(sum));
    }
    return worst;
  }
  for (auto [m, n] : unit_sample(d)) {
    ComplexMatrix unit = ComplexMatrix::Zero(d, d);
    unit(m, n) = 1.0;
    worst = std::max(worst, std::abs(apply_generator(l, unit).trace()));
  }
  return worst;
}

double hermiticity_preservation_residual(const Liouvillian& l) {
  const int d = l.system_dim();
  const Complex im{0.0, 1.0};
  double worst = 0.0;
  for (auto [m, n] : unit_sample(d)) {
    if (n < m) continue;
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    if (m == n) {
      x(m, m) = 1.0;
      worst = std::max(worst, max_hermitian_deviation(apply_generator(l, x)));
      continue;
    }
    x(m, n) = 1.0;
    x(n, m) = 1.0;
    worst = std::max(worst, max_hermitian_deviation(apply_generator(l, x)));
    x(m, n) = im;
    x(n, m) = -im;
    worst = std::max(worst, max_hermitian_deviation(apply_generator(l, x)));
  }
  return worst;
}

}  // namespace thermochain::dynamics
