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

#include "thermochain/linalg.hpp"

namespace thermochain::model {

// Thermal bosonic reservoir attached to one qubit (units hbar = k_B = 1).
struct BathSpec {
  int site = 0;
  double gamma = 0.0;  // relaxation-rate scale, > 0
  double beta = 0.0;   // inverse temperature, > 0
};

// Uniform XX chain: Σ (ε/2) σz_i + K Σ (σ+_i σ-_{i+1} + σ-_i σ+_{i+1}).
struct ChainSpec {
  int n_qubits = 2;
  double epsilon = 1.5;
  double coupling = 1.0;
  std::vector<BathSpec> baths;

  static constexpr int kMaxQubits = 8;

  // Throws InvalidSpec.
  void validate() const;

  // Two baths on the end sites, the configuration used throughout.
  static ChainSpec end_coupled(int n_qubits, double epsilon, double coupling, double gamma_first,
                               double beta_first, double gamma_last, double beta_last);
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // columns; first non-negligible amplitude real positive
  std::vector<double> bohr_frequencies;  // distinct positive gaps, ascending
  double bin_tolerance = 0.0;
};

// A lowering eigenoperator V(ω) of one bath together with its rates.
// Down (decay) uses V at rate_down, up (excitation) uses V† at rate_up.
struct JumpChannel {
  int bath_index = 0;
  double omega = 0.0;
  ComplexMatrix lowering_op;
  double rate_up = 0.0;    // γ n(ω)
  double rate_down = 0.0;  // γ (n(ω) + 1)
};

struct Eigenoperator {
  double omega = 0.0;
  ComplexMatrix op;
};

struct ChannelRates {
  double up = 0.0;
  double down = 0.0;
};

ComplexMatrix build_hamiltonian(const ChainSpec& spec);

// 1 / (e^{βω} - 1). Throws FrequencyTooSmall when βω < 1e-12.
double bose_occupation(double beta, double omega);

ChannelRates channel_rates(const BathSpec& bath, double omega);

double default_bin_tolerance(const RealVector& eigenvalues);

// Eigensystem plus the table of distinct positive Bohr frequencies.
// Throws NearDegenerateGap when two gaps differ by an amount in
// (tol, 10 tol), where secular grouping would be ambiguous.
SpectralDecomposition diagonalize(const ComplexMatrix& h, std::optional<double> bin_tolerance = {});

// Splits `site_op` into pieces V(ω) = Σ_{E_b - E_a = ω} Π_a site_op Π_b, one
// per signed frequency with non-negligible weight, ascending in ω. Pieces at
// ω <= 0 are returned too; callers decide whether they are allowed.
std::vector<Eigenoperator> eigenoperators(const SpectralDecomposition& decomp, const ComplexMatrix& site_op);

// One channel per (bath, positive Bohr frequency) of each bath's σ- lowering
// operator. Throws FrequencyTooSmall if any bath transition sits at ω <= tol.
std::vector<JumpChannel> build_channels(const ChainSpec& spec);
std::vector<JumpChannel> build_channels(const ChainSpec& spec, const SpectralDecomposition& decomp);

// Closed-form eigensystems and transition operators of the two- and
// three-qubit chains. Used to cross-check the generic construction.
namespace tables {

struct Eigenpair {
  double energy = 0.0;
  ComplexVector vector;
};

struct TransitionOperator {
  int site = 0;
  int label = 0;  // frequency index, 1-based, matching bath_frequencies()
  double omega = 0.0;
  ComplexMatrix op;
};

struct NamedFrequency {
  std::string label;    // e.g. "omega_2"
  std::string formula;  // e.g. "epsilon - sqrt(2)*K"
  double value = 0.0;
};

// |m_1> .. |m_4>: |00>, |11>, (|10>+|01>)/√2, (-|10>+|01>)/√2 with
// energies -ε, ε, K, -K.
std::vector<Eigenpair> two_qubit_eigensystem(double epsilon, double coupling);

// |m_1> .. |m_8> of the three-qubit chain.
std::vector<Eigenpair> three_qubit_eigensystem(double epsilon, double coupling);

// Bath-coupled Bohr frequencies in the fixed order used by the X
// coefficients: n=2 -> (ε-K, ε+K); n=3 -> (ε, ε-√2K, ε+√2K).
std::vector<NamedFrequency> bath_frequencies(int n_qubits, double epsilon, double coupling);

std::vector<TransitionOperator> two_qubit_transition_operators(double epsilon, double coupling);
std::vector<TransitionOperator> three_qubit_transition_operators(double epsilon, double coupling);

// Channels assembled from the closed-form operators with rates from each
// end bath. Requires n_qubits in {2, 3} and baths on the end sites.
std::vector<JumpChannel> channels_from_tables(const ChainSpec& spec);

}  // namespace tables

}  // namespace thermochain::model
