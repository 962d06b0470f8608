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

#include <span>
#include <vector>

#include "thermochain/kernels.hpp"
#include "thermochain/linalg.hpp"
#include "thermochain/model.hpp"

namespace thermochain::dynamics {

// Largest superoperator dimension (4^n) for which the dense generator is
// materialized, and for which full spectral analysis is attempted.
inline constexpr int kMaxGeneratorDim = 4096;
inline constexpr int kMaxSpectralDim = 256;

// Lindblad generator of a secular master equation. Immutable once built.
//
// The dense generator acts on column-stacked density matrices,
// vec(rho)[i + d*j] = rho(i, j):
//   G = -i (I ⊗ H - Hᵀ ⊗ I)
//       + Σ_channels rate_down D[V] + rate_up D[V†],
//   D[A] = conj(A) ⊗ A - ½ (I ⊗ A†A + (A†A)ᵀ ⊗ I).
class Liouvillian {
 public:
  int system_dim() const { return static_cast<int>(hamiltonian_.rows()); }
  int dim() const { return system_dim() * system_dim(); }

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<model::JumpChannel>& channels() const { return channels_; }
  const kernels::LindbladTerms& terms() const { return terms_; }

  bool has_generator() const { return generator_.size() > 0; }
  // Throws Unsupported when the dense form was not built (dim > kMaxGeneratorDim).
  const ComplexMatrix& generator() const;

 private:
  friend Liouvillian build_liouvillian(const ComplexMatrix& h, std::vector<model::JumpChannel> channels);

  ComplexMatrix hamiltonian_;
  std::vector<model::JumpChannel> channels_;
  kernels::LindbladTerms terms_;
  ComplexMatrix generator_;
};

Liouvillian build_liouvillian(const ComplexMatrix& h, std::vector<model::JumpChannel> channels);

// Convenience: Hamiltonian plus generic channels of a chain.
Liouvillian build_liouvillian(const model::ChainSpec& spec);

// dρ/dt for the given state, evaluated in operator form.
ComplexMatrix apply_generator(const Liouvillian& l, const ComplexMatrix& rho);
ComplexMatrix apply_generator(const Liouvillian& l, const DensityMatrix& rho);

ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

enum class Backend { RungeKutta, MatrixExponential };

struct EvolveOptions {
  Backend backend = Backend::RungeKutta;
  double rtol = 1e-10;
  double atol = 1e-12;
  long long max_steps = 50'000'000;
};

// ρ(t) at each requested time (ascending, t >= 0). The RK backend is an
// adaptive Dormand-Prince 5(4) pair with max-norm error control; the
// matrix-exponential backend needs the dense generator.
// Throws ToleranceNotMet (step underflow, step budget, or trace drift
// beyond 1e-8) and PositivityLost (min eigenvalue below -1e-6).
std::vector<DensityMatrix> evolve(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times,
                                  const EvolveOptions& options = {});

// The same propagation without the per-output checks and symmetrization;
// for diagnostics that measure the raw drift.
std::vector<ComplexMatrix> propagate(const Liouvillian& l, const DensityMatrix& rho0, std::span<const double> times,
                                     const EvolveOptions& options = {});

struct SteadyState {
  DensityMatrix state;
  double gap = 0.0;
};

// Summary of the generator spectrum used for uniqueness certificates.
struct SpectrumSummary {
  ComplexVector eigenvalues;  // sorted by ascending magnitude
  double generator_norm = 0.0;  // Frobenius
  double gap_floor = 0.0;       // 1e-10 * generator_norm
  int near_zero_count = 0;      // eigenvalues with |λ| < gap_floor
  double gap = 0.0;             // smallest |Re λ| over all but the null eigenvalue
};

SpectrumSummary spectrum_summary(const Liouvillian& l);

// Unique fixed point of the generator, from the eigenvector of its
// smallest-magnitude eigenvalue, polished by a bordered least-squares step.
// Throws DegenerateSteadyState when more than one eigenvalue falls below
// the gap floor, Unsupported when dim > kMaxSpectralDim.
SteadyState steady_state(const Liouvillian& l);

double spectral_gap(const Liouvillian& l);

// max_k |Σ_i G(i + d i, k)|: how far Tr fails to be a left null vector.
double trace_preservation_residual(const Liouvillian& l);

// Largest anti-Hermitian part of L(X) over a basis of Hermitian X.
double hermiticity_preservation_residual(const Liouvillian& l);

}  // namespace thermochain::dynamics
