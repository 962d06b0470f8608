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

#include "thermochain/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace thermochain::model {

namespace {

std::string describe(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

void ChainSpec::validate() const {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw InvalidSpec("n_qubits must be in [2, " + std::to_string(kMaxQubits) + "], got " +
                      std::to_string(n_qubits));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidSpec("epsilon must be positive and finite, got " + describe(epsilon));
  }
  if (!std::isfinite(coupling)) throw InvalidSpec("coupling must be finite");
  if (baths.empty()) throw InvalidSpec("at least one bath is required");
  std::set<int> sites;
  for (const auto& bath : baths) {
    if (bath.site < 0 || bath.site >= n_qubits) {
      throw InvalidSpec("bath site " + std::to_string(bath.site) + " outside chain");
    }
    if (!sites.insert(bath.site).second) {
      throw InvalidSpec("two baths attached to site " + std::to_string(bath.site));
    }
    if (!(bath.gamma > 0.0) || !std::isfinite(bath.gamma)) {
      throw InvalidSpec("bath gamma must be positive, got " + describe(bath.gamma));
    }
    if (!(bath.beta > 0.0) || !std::isfinite(bath.beta)) {
      throw InvalidSpec("bath beta must be positive, got " + describe(bath.beta));
    }
  }
}

ChainSpec ChainSpec::end_coupled(int n_qubits, double epsilon, double coupling, double gamma_first,
                                 double beta_first, double gamma_last, double beta_last) {
  ChainSpec spec;
  spec.n_qubits = n_qubits;
  spec.epsilon = epsilon;
  spec.coupling = coupling;
  spec.baths = {{0, gamma_first, beta_first}, {n_qubits - 1, gamma_last, beta_last}};
  return spec;
}

ComplexMatrix build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  const int dim = 1 << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) h += 0.5 * spec.epsilon * embed_site_operator(sigma_z(), i, n);
  for (int i = 0; i + 1 < n; ++i) {
    const ComplexMatrix hop = embed_site_operator(sigma_plus(), i, n) * embed_site_operator(sigma_minus(), i + 1, n);
    h += spec.coupling * (hop + hop.adjoint());
  }
  return h;
}

double bose_occupation(double beta, double omega) {
  const double x = beta * omega;
  if (!(x >= 1e-12)) {
    throw FrequencyTooSmall("Bose-Einstein factor diverges: beta*omega = " + describe(x) +
                            " (beta = " + describe(beta) + ", omega = " + describe(omega) + ")");
  }
  return 1.0 / std::expm1(x);
}

ChannelRates channel_rates(const BathSpec& bath, double omega) {
  const double n = bose_occupation(bath.beta, omega);
  // n + 1 = 1 / (1 - e^{-βω}), evaluated without cancellation.
  const double n_plus_one = -1.0 / std::expm1(-bath.beta * omega);
  return {bath.gamma * n, bath.gamma * n_plus_one};
}

double default_bin_tolerance(const RealVector& eigenvalues) {
  const double scale = eigenvalues.size() > 0 ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-9 * (scale > 0.0 ? scale : 1.0);
}

SpectralDecomposition diagonalize(const ComplexMatrix& h, std::optional<double> bin_tolerance) {
  HermitianEigen eig = hermitian_eig(h);
  SpectralDecomposition out;
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  out.bin_tolerance = bin_tolerance.value_or(default_bin_tolerance(out.eigenvalues));
  const double tol = out.bin_tolerance;

  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto column = out.eigenvectors.col(c);
    for (Eigen::Index r = 0; r < column.size(); ++r) {
      if (std::abs(column(r)) > 1e-10) {
        column *= std::conj(column(r)) / std::abs(column(r));
        column(r) = std::abs(column(r));
        break;
      }
    }
  }

  std::vector<double> gaps;
  const Eigen::Index dim = out.eigenvalues.size();
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      const double g = out.eigenvalues(b) - out.eigenvalues(a);
      if (g > tol) gaps.push_back(g);
    }
  }
  std::sort(gaps.begin(), gaps.end());

  // Single-linkage binning; each bin is represented by its mean.
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i > 0) {
      const double diff = gaps[i] - gaps[i - 1];
      if (diff > tol && diff < 10.0 * tol) {
        throw NearDegenerateGap("Bohr frequencies " + describe(gaps[i - 1]) + " and " + describe(gaps[i]) +
                                " differ by " + describe(diff) + ", within 10x the bin tolerance " +
                                describe(tol));
      }
      if (diff > tol) {
        out.bohr_frequencies.push_back(sum / count);
        sum = 0.0;
        count = 0;
      }
    }
    sum += gaps[i];
    ++count;
  }
  if (count > 0) out.bohr_frequencies.push_back(sum / count);
  return out;
}

std::vector<Eigenoperator> eigenoperators(const SpectralDecomposition& decomp, const ComplexMatrix& site_op) {
  const ComplexMatrix& u = decomp.eigenvectors;
  if (site_op.rows() != u.rows() || site_op.cols() != u.cols()) {
    throw DimMismatch("eigenoperators: operator and eigenbasis dimensions differ");
  }
  const double tol = decomp.bin_tolerance;
  const auto& freqs = decomp.bohr_frequencies;
  const Eigen::Index dim = u.rows();
  const ComplexMatrix in_eigenbasis = u.adjoint() * site_op * u;

  // Signed frequency slot per (a, b): 0 for the zero bin, ±(k+1) for bin k.
  auto slot_of = [&](double gap) -> int {
    if (std::abs(gap) <= tol) return 0;
    const double mag = std::abs(gap);
    auto it = std::min_element(freqs.begin(), freqs.end(),
                               [mag](double x, double y) { return std::abs(x - mag) < std::abs(y - mag); });
    const int k = static_cast<int>(it - freqs.begin()) + 1;
    return gap > 0 ? k : -k;
  };

  const int n_freq = static_cast<int>(freqs.size());
  std::vector<ComplexMatrix> pieces(2 * n_freq + 1, ComplexMatrix::Zero(dim, dim));
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const Complex c = in_eigenbasis(a, b);
      if (c == Complex{}) continue;
      const int slot = slot_of(decomp.eigenvalues(b) - decomp.eigenvalues(a));
      pieces[slot + n_freq](a, b) = c;
    }
  }

  const double floor = 1e-12 * std::max(1.0, site_op.norm());
  std::vector<Eigenoperator> out;
  for (int s = -n_freq; s <= n_freq; ++s) {
    const ComplexMatrix& piece = pieces[s + n_freq];
    if (piece.norm() <= floor) continue;
    const double omega = s == 0 ? 0.0 : (s > 0 ? freqs[s - 1] : -freqs[-s - 1]);
    out.push_back({omega, u * piece * u.adjoint()});
  }
  return out;
}

std::vector<JumpChannel> build_channels(const ChainSpec& spec, const SpectralDecomposition& decomp) {
  spec.validate();
  std::vector<JumpChannel> channels;
  for (std::size_t j = 0; j < spec.baths.size(); ++j) {
    const BathSpec& bath = spec.baths[j];
    const ComplexMatrix lowering = embed_site_operator(sigma_minus(), bath.site, spec.n_qubits);
    for (auto& piece : eigenoperators(decomp, lowering)) {
      if (piece.omega <= decomp.bin_tolerance) {
        throw FrequencyTooSmall("bath at site " + std::to_string(bath.site) +
                                " couples through a non-positive Bohr frequency omega = " +
                                describe(piece.omega) + " (epsilon = " + describe(spec.epsilon) +
                                ", K = " + describe(spec.coupling) + ")");
      }
      const ChannelRates rates = channel_rates(bath, piece.omega);
      channels.push_back({static_cast<int>(j), piece.omega, std::move(piece.op), rates.up, rates.down});
    }
  }
  return channels;
}

std::vector<JumpChannel> build_channels(const ChainSpec& spec) {
  return build_channels(spec, diagonalize(build_hamiltonian(spec)));
}

}  // namespace thermochain::model
