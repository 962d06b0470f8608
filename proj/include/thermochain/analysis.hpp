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

#include <vector>

#include "thermochain/linalg.hpp"
#include "thermochain/model.hpp"

namespace thermochain::analysis {

// How summed bath rates are assigned to the X± symbols of the closed-form
// steady states.
//   Resolved:     x_plus = Σ γ_j (n_j + 1)  (decay),  x_minus = Σ γ_j n_j  (excitation)
//   Swapped:      the opposite assignment. It puts the smallest weight on the
//                 ground state and exists to check that the oracle tests can
//                 tell the difference.
enum class XConvention { Resolved, Swapped };

// Summed rates per bath-coupled frequency, in the order given by
// model::tables::bath_frequencies.
struct XCoefficients {
  std::vector<double> omega;
  std::vector<double> x_minus;
  std::vector<double> x_plus;
  std::vector<double> x_total;
};

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

// Concurrence between the first and last qubit of an n_sites chain.
double concurrence_first_last(const DensityMatrix& rho, int n_sites);

XCoefficients x_coefficients(const model::ChainSpec& spec, XConvention convention = XConvention::Resolved);

// Two-qubit nonequilibrium steady state in the computational basis:
// diagonal X products plus the coherence block between |01> and |10>.
DensityMatrix analytic_steady_state_2q(const model::ChainSpec& spec,
                                       XConvention convention = XConvention::Resolved);

// Closed-form steady-state concurrence of the two-qubit chain.
double analytic_concurrence_2q(const model::ChainSpec& spec, XConvention convention = XConvention::Resolved);

// Populations of |m_1> .. |m_8> in the three-qubit steady state.
RealVector analytic_populations_3q(const model::ChainSpec& spec, XConvention convention = XConvention::Resolved);

// Three-qubit steady state: diagonal in the chain eigenbasis, returned in the
// computational basis.
DensityMatrix analytic_steady_state_3q(const model::ChainSpec& spec,
                                       XConvention convention = XConvention::Resolved);

// e^{-βH} / Tr e^{-βH}.
DensityMatrix gibbs_state(const ComplexMatrix& h, double beta);

// |W_3> = (|100> + |010> + |001>)/√3 as a projector. Unsupported for n != 3.
DensityMatrix w_state(int n = 3);

}  // namespace thermochain::analysis
