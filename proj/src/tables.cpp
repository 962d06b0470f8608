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

#include <cmath>
#include <string>

#include "thermochain/model.hpp"

namespace thermochain::model::tables {

namespace {

// Computational basis ket from a bit string, site 0 first.
ComplexVector ket(const char* bits) {
  const int n = static_cast<int>(std::char_traits<char>::length(bits));
  int index = 0;
  for (int i = 0; i < n; ++i) index = (index << 1) | (bits[i] == '1' ? 1 : 0);
  return basis_ket(index, 1 << n);
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

}  // namespace

std::vector<Eigenpair> two_qubit_eigensystem(double epsilon, double coupling) {
  const double r = 1.0 / std::sqrt(2.0);
  return {
      {-epsilon, ket("00")},
      {epsilon, ket("11")},
      {coupling, r * (ket("10") + ket("01"))},
      {-coupling, r * (-ket("10") + ket("01"))},
  };
}

std::vector<Eigenpair> three_qubit_eigensystem(double epsilon, double coupling) {
  const double r = 1.0 / std::sqrt(2.0);
  const double s2 = std::sqrt(2.0);
  const double sk = s2 * coupling;
  return {
      {-1.5 * epsilon, ket("000")},
      {-0.5 * epsilon, r * (ket("001") - ket("100"))},
      {0.5 * epsilon, r * (ket("011") - ket("110"))},
      {1.5 * epsilon, ket("111")},
      {-0.5 * epsilon - sk, 0.5 * (ket("100") - s2 * ket("010") + ket("001"))},
      {0.5 * epsilon - sk, 0.5 * (ket("110") - s2 * ket("101") + ket("011"))},
      {-0.5 * epsilon + sk, 0.5 * (ket("100") + s2 * ket("010") + ket("001"))},
      {0.5 * epsilon + sk, 0.5 * (ket("110") + s2 * ket("101") + ket("011"))},
  };
}

std::vector<NamedFrequency> bath_frequencies(int n_qubits, double epsilon, double coupling) {
  if (n_qubits == 2) {
    return {{"omega_1", "epsilon - K", epsilon - coupling}, {"omega_2", "epsilon + K", epsilon + coupling}};
  }
  if (n_qubits == 3) {
    const double sk = std::sqrt(2.0) * coupling;
    return {{"omega_1", "epsilon", epsilon},
            {"omega_2", "epsilon - sqrt(2)*K", epsilon - sk},
            {"omega_3", "epsilon + sqrt(2)*K", epsilon + sk}};
  }
  throw Unsupported("closed-form frequencies exist for 2 and 3 qubits only");
}

std::vector<TransitionOperator> two_qubit_transition_operators(double epsilon, double coupling) {
  const auto m = two_qubit_eigensystem(epsilon, coupling);
  const auto& v1 = m[0].vector;
  const auto& v2 = m[1].vector;
  const auto& v3 = m[2].vector;
  const auto& v4 = m[3].vector;
  const double r = 1.0 / std::sqrt(2.0);
  const double lower = epsilon - coupling;
  const double upper = epsilon + coupling;
  // |m3> -> |m1> and |m2> -> |m4> both release ε + K; |m2> -> |m3> and
  // |m4> -> |m1> release ε - K.
  return {
      {0, 2, upper, r * (outer(v1, v3) + outer(v4, v2))},
      {0, 1, lower, r * (outer(v3, v2) - outer(v1, v4))},
      {1, 2, upper, r * (outer(v1, v3) - outer(v4, v2))},
      {1, 1, lower, r * (outer(v3, v2) + outer(v1, v4))},
  };
}

std::vector<TransitionOperator> three_qubit_transition_operators(double epsilon, double coupling) {
  const auto m = three_qubit_eigensystem(epsilon, coupling);
  auto o = [&m](int a, int b) { return outer(m[a - 1].vector, m[b - 1].vector); };
  const double r = 1.0 / std::sqrt(2.0);
  const auto f = bath_frequencies(3, epsilon, coupling);
  return {
      {0, 1, f[0].value, r * (-o(1, 2) + o(3, 4) - o(5, 6) + o(7, 8))},
      {0, 2, f[1].value, 0.5 * (o(1, 5) - o(2, 6) - o(7, 3) + o(8, 4))},
      {0, 3, f[2].value, 0.5 * (o(1, 7) + o(2, 8) + o(5, 3) + o(6, 4))},
      {2, 1, f[0].value, r * (o(1, 2) - o(3, 4) - o(5, 6) + o(7, 8))},
      {2, 2, f[1].value, 0.5 * (o(1, 5) + o(2, 6) + o(7, 3) + o(8, 4))},
      {2, 3, f[2].value, 0.5 * (o(1, 7) - o(2, 8) - o(5, 3) + o(6, 4))},
  };
}

std::vector<JumpChannel> channels_from_tables(const ChainSpec& spec) {
  spec.validate();
  std::vector<TransitionOperator> ops;
  if (spec.n_qubits == 2) {
    ops = two_qubit_transition_operators(spec.epsilon, spec.coupling);
  } else if (spec.n_qubits == 3) {
    ops = three_qubit_transition_operators(spec.epsilon, spec.coupling);
  } else {
    throw Unsupported("closed-form transition operators exist for 2 and 3 qubits only");
  }
  std::vector<JumpChannel> channels;
  for (std::size_t j = 0; j < spec.baths.size(); ++j) {
    const BathSpec& bath = spec.baths[j];
    if (bath.site != 0 && bath.site != spec.n_qubits - 1) {
      throw Unsupported("closed-form transition operators need baths on the end sites");
    }
    for (const auto& op : ops) {
      if (op.site != bath.site) continue;
      if (!(op.omega > 0.0)) {
        throw FrequencyTooSmall(bath_frequencies(spec.n_qubits, spec.epsilon, spec.coupling)[op.label - 1].label +
                                " is not positive");
      }
      const ChannelRates rates = channel_rates(bath, op.omega);
      channels.push_back({static_cast<int>(j), op.omega, op.op, rates.up, rates.down});
    }
  }
  return channels;
}

}  // namespace thermochain::model::tables
