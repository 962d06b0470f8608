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

#include "thermochain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "thermochain/kernels.hpp"

namespace thermochain {

bool is_power_of_two(long long x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(long long x) {
  if (!is_power_of_two(x)) throw DimMismatch("dimension is not a power of two");
  int n = 0;
  while ((1LL << n) < x) ++n;
  return n;
}

double max_hermitian_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimMismatch("matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(hermitian), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const StateTolerances& tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || !is_power_of_two(m_.rows())) {
    throw InvalidDensityMatrix("density matrix must be square with power-of-two dimension");
  }
  const double herm = max_hermitian_deviation(m_);
  if (herm > tol.hermitian) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian: max|rho - rho^dag| = " << herm;
    throw InvalidDensityMatrix(msg.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > tol.trace) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " deviates from 1";
    throw InvalidDensityMatrix(msg.str());
  }
  const double lowest = min_eigenvalue(m_);
  if (lowest < tol.min_eigenvalue) {
    std::ostringstream msg;
    msg << "density matrix not positive semidefinite: min eigenvalue " << lowest;
    throw InvalidDensityMatrix(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const ComplexVector unit = psi / psi.norm();
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

int DensityMatrix::n_sites() const { return log2_exact(m_.rows()); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kernels::omp::kron(a, b); }

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw NotHermitian("matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double dev = max_hermitian_deviation(h);
  if (dev > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max|h - h^dag| = " << dev;
    throw NotHermitian(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h));
  if (solver.info() != Eigen::Success) throw NotHermitian("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep, int n_sites) {
  if (n_sites < 1 || rho.dim() != (1 << n_sites)) {
    throw DimMismatch("partial_trace: state dimension does not match 2^n_sites");
  }
  std::set<int> seen;
  for (int s : keep) {
    if (s < 0 || s >= n_sites) {
      throw IndexOutOfRange("partial_trace: site " + std::to_string(s) + " outside [0, " +
                            std::to_string(n_sites) + ")");
    }
    if (!seen.insert(s).second) {
      throw IndexOutOfRange("partial_trace: site " + std::to_string(s) + " listed twice");
    }
  }
  if (keep.empty()) throw IndexOutOfRange("partial_trace: keep list is empty");
  ComplexMatrix reduced = kernels::omp::partial_trace(rho.matrix(), keep, n_sites);
  // Trace and Hermiticity carry over exactly up to rounding; the parent state
  // was already validated.
  return DensityMatrix(hermitize(reduced), {1e-12, 1e-9, -1e-8});
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(a - b), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix sigma_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  // i(σ- - σ+) in this basis ordering
  m(0, 1) = Complex{0.0, 1.0};
  m(1, 0) = Complex{0.0, -1.0};
  return m;
}

ComplexMatrix embed_site_operator(const ComplexMatrix& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) {
    throw IndexOutOfRange("site " + std::to_string(site) + " outside chain of " + std::to_string(n_sites));
  }
  const int left = 1 << site;
  const int right = 1 << (n_sites - site - 1);
  return kron(kron(identity(left), op), identity(right));
}

ComplexVector basis_ket(int index, int dim) {
  if (index < 0 || index >= dim) throw IndexOutOfRange("basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace thermochain
