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

#include "thermochain/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace thermochain::analysis {

namespace {

void require_end_baths(const model::ChainSpec& spec) {
  spec.validate();
  for (const auto& bath : spec.baths) {
    if (bath.site != 0 && bath.site != spec.n_qubits - 1) {
      throw Unsupported("closed-form results assume baths on the end sites");
    }
  }
}

// Sign table of the three-qubit populations: '+' picks X⁺ (mode empty),
// '-' picks X⁻ (mode occupied), for frequencies (ε, ε-√2K, ε+√2K).
constexpr std::array<const char*, 8> kThreeQubitPattern = {"+++", "-++", "+--", "---",
                                                            "+-+", "--+", "++-", "-+-"};

}  // namespace

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimMismatch("concurrence needs a two-qubit (4x4) state");
  // λ_i = sqrt(eig(√ρ ρ̃ √ρ)) are the singular values of √ρ Y conj(√ρ) with
  // Y = σy⊗σy, since √ρ ρ̃ √ρ = A A† for that A. The SVD delivers them to
  // absolute accuracy; square roots of tiny eigenvalues would not.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitize(rho.matrix()));
  const RealVector clipped = eig.eigenvalues().cwiseMax(0.0);
  const ComplexMatrix& u = eig.eigenvectors();
  const ComplexMatrix sqrt_rho = u * clipped.cwiseSqrt().cast<Complex>().asDiagonal() * u.adjoint();
  const ComplexMatrix yy = kron(sigma_y(), sigma_y());
  const ComplexMatrix a = sqrt_rho * yy * sqrt_rho.conjugate();
  const RealVector lambda = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();  // descending
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double concurrence_first_last(const DensityMatrix& rho, int n_sites) {
  if (n_sites < 2) throw DimMismatch("concurrence_first_last needs at least two sites");
  if (n_sites == 2) return concurrence(rho);
  const std::array<int, 2> keep{0, n_sites - 1};
  return concurrence(partial_trace(rho, keep, n_sites));
}

XCoefficients x_coefficients(const model::ChainSpec& spec, XConvention convention) {
  require_end_baths(spec);
  const auto freqs = model::tables::bath_frequencies(spec.n_qubits, spec.epsilon, spec.coupling);
  XCoefficients x;
  for (const auto& f : freqs) {
    if (!(f.value > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << f.label << " = " << f.formula << " = " << f.value << " is not positive";
      throw FrequencyTooSmall(msg.str());
    }
    double up = 0.0, down = 0.0;
    for (const auto& bath : spec.baths) {
      const auto rates = model::channel_rates(bath, f.value);
      up += rates.up;
      down += rates.down;
    }
    if (convention == XConvention::Swapped) std::swap(up, down);
    x.omega.push_back(f.value);
    x.x_minus.push_back(up);
    x.x_plus.push_back(down);
    x.x_total.push_back(up + down);
  }
  return x;
}

namespace {

void require_two_qubit(const model::ChainSpec& spec) {
  if (spec.n_qubits != 2) throw Unsupported("two-qubit closed form called with n = " + std::to_string(spec.n_qubits));
  if (!(spec.coupling > 0.0)) throw InvalidSpec("two-qubit closed form needs K > 0");
}

}  // namespace

DensityMatrix analytic_steady_state_2q(const model::ChainSpec& spec, XConvention convention) {
  require_two_qubit(spec);
  const XCoefficients x = x_coefficients(spec, convention);
  const double norm = x.x_total[0] * x.x_total[1];
  const double p00 = x.x_plus[0] * x.x_plus[1] / norm;
  const double p11 = x.x_minus[0] * x.x_minus[1] / norm;
  // Mode ε-K occupied <-> |m4>, mode ε+K occupied <-> |m3>.
  const double p_m4 = x.x_minus[0] * x.x_plus[1] / norm;
  const double p_m3 = x.x_plus[0] * x.x_minus[1] / norm;

  // |01> = index 1, |10> = index 2.
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = p00;
  rho(3, 3) = p11;
  rho(1, 1) = rho(2, 2) = 0.5 * (p_m3 + p_m4);
  rho(1, 2) = rho(2, 1) = 0.5 * (p_m3 - p_m4);
  return DensityMatrix(rho);
}

double analytic_concurrence_2q(const model::ChainSpec& spec, XConvention convention) {
  require_two_qubit(spec);
  const XCoefficients x = x_coefficients(spec, convention);
  const double x1p = x.x_plus[0], x1m = x.x_minus[0], x2p = x.x_plus[1], x2m = x.x_minus[1];
  const double inner = 0.5 * std::abs(x1p * x2m - x1m * x2p) - std::sqrt(x1m * x1p * x2m * x2p);
  return 2.0 / (x.x_total[0] * x.x_total[1]) * std::max(0.0, inner);
}

RealVector analytic_populations_3q(const model::ChainSpec& spec, XConvention convention) {
  if (spec.n_qubits != 3) throw Unsupported("three-qubit closed form called with n = " + std::to_string(spec.n_qubits));
  const XCoefficients x = x_coefficients(spec, convention);
  RealVector p(8);
  for (int s = 0; s < 8; ++s) {
    double value = 1.0;
    for (int i = 0; i < 3; ++i) {
      value *= (kThreeQubitPattern[s][i] == '+' ? x.x_plus[i] : x.x_minus[i]) / x.x_total[i];
    }
    p(s) = value;
  }
  return p;
}

DensityMatrix analytic_steady_state_3q(const model::ChainSpec& spec, XConvention convention) {
  const RealVector p = analytic_populations_3q(spec, convention);
  const auto basis = model::tables::three_qubit_eigensystem(spec.epsilon, spec.coupling);
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (int s = 0; s < 8; ++s) rho += p(s) * basis[s].vector * basis[s].vector.adjoint();
  return DensityMatrix(hermitize(rho));
}

DensityMatrix gibbs_state(const ComplexMatrix& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidSpec("gibbs_state: beta must be finite and >= 0");
  const HermitianEigen eig = hermitian_eig(h);
  const double e0 = eig.values.minCoeff();
  RealVector w = (-(beta) * (eig.values.array() - e0)).exp().matrix();
  w /= w.sum();
  const ComplexMatrix rho = eig.vectors * w.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix(hermitize(rho));
}

DensityMatrix w_state(int n) {
  if (n != 3) throw Unsupported("W state is only provided for three qubits");
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0b100) = psi(0b010) = psi(0b001) = 1.0 / std::sqrt(3.0);
  return DensityMatrix::pure(psi);
}

}  // namespace thermochain::analysis
