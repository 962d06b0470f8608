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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "thermochain/error.hpp"

namespace thermochain {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Acceptance thresholds for a density matrix. The defaults are the strict
// invariants; trajectory outputs use a looser trace bound.
struct StateTolerances {
  double hermitian = 1e-12;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
};

// Hermitian, unit-trace, positive-semidefinite matrix on 2^n levels.
// Validated on construction; immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const StateTolerances& tol = {});

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_sites() const;
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

// Standard Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
// max|h - h†| exceeds 1e-10 (scaled by max(1, max|h|)).
HermitianEigen hermitian_eig(const ComplexMatrix& h);

// Reduced state on `keep` (in the listed order) of an n_sites-qubit state.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep, int n_sites);

// (1/2) Σ |eigenvalues of a - b|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double max_hermitian_deviation(const ComplexMatrix& m);
ComplexMatrix hermitize(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& hermitian);

// Single-qubit operators in the (|0>, |1>) basis, |1> excited:
// σz|1> = +|1>, σ+|0> = |1>.
ComplexMatrix identity(int dim);
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_y();

// I ⊗ ... ⊗ op(site) ⊗ ... ⊗ I; site 0 is the leftmost factor.
ComplexMatrix embed_site_operator(const ComplexMatrix& op, int site, int n_sites);

// Computational basis vector |index> of a dim-level space.
ComplexVector basis_ket(int index, int dim);

bool is_power_of_two(long long x);
int log2_exact(long long x);

}  // namespace thermochain
