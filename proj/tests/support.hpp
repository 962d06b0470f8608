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

// Seeded random objects shared by the property tests.

#include <cmath>
#include <random>

#include "thermochain/linalg.hpp"

namespace thermochain::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260415);
  return engine;
}

inline ComplexMatrix random_matrix(int rows, int cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex{normal(rng()), normal(rng())};
  return m;
}

inline ComplexMatrix random_hermitian(int dim) {
  const ComplexMatrix a = random_matrix(dim, dim);
  return (a + a.adjoint()) / 2.0;
}

// Full-rank mixed state: A A† / Tr.
inline DensityMatrix random_state(int dim) {
  const ComplexMatrix a = random_matrix(dim, dim);
  const ComplexMatrix p = a * a.adjoint();
  return DensityMatrix((p + p.adjoint()) / (2.0 * p.trace().real()));
}

inline ComplexMatrix random_unitary(int dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(dim, dim));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace thermochain::testing
