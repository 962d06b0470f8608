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

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp` with the same
// signature and the same per-element summation order, so the two agree to the
// last bit. Tests compare them; bench/bench_kernels times them.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "thermochain/linalg.hpp"

namespace thermochain::kernels {

// One term `left * rho * right` of a linear map on matrices.
struct Sandwich {
  ComplexMatrix left;
  ComplexMatrix right;
};

// Lindblad generator in operator form:
//   L(rho) = -i (H_eff rho - rho H_eff†) + Σ rate_k J_k rho J_k†
// with H_eff = H - (i/2) Σ rate_k J_k† J_k.
struct LindbladTerms {
  struct Jump {
    ComplexMatrix op;
    ComplexMatrix op_adjoint;
    double rate = 0.0;
  };
  ComplexMatrix effective_h;
  ComplexMatrix effective_h_adjoint;
  std::vector<Jump> jumps;

  int dim() const { return static_cast<int>(effective_h.rows()); }
};

// Below this matrix dimension the OpenMP kernels run on one thread.
inline constexpr int kParallelMinDim = 32;

namespace serial {
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep, int n_sites);
void gemm(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void lindblad_rhs(const LindbladTerms& terms, const ComplexMatrix& rho, ComplexMatrix& out);
ComplexMatrix assemble_superoperator(std::span<const Sandwich> terms, int dim);
void superop_matvec(const ComplexMatrix& g, const ComplexVector& x, ComplexVector& y);
}  // namespace serial

namespace omp {
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep, int n_sites);
void gemm(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void lindblad_rhs(const LindbladTerms& terms, const ComplexMatrix& rho, ComplexMatrix& out);
ComplexMatrix assemble_superoperator(std::span<const Sandwich> terms, int dim);
void superop_matvec(const ComplexMatrix& g, const ComplexVector& x, ComplexVector& y);

// Evaluates f(0..n-1) as independent tasks; results keep index order
// regardless of completion order. The first exception thrown by any task is
// rethrown after the loop.
template <class Result, class F>
std::vector<Result> map_indexed(std::size_t n, F&& f) {
  std::vector<Result> out(n);
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(thermochain_map_indexed)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}
}  // namespace omp

// map[kept * n_traced + traced] is the full basis index that combines a
// kept-subsystem index with a traced-subsystem index. Sites are assumed valid.
std::vector<int> partial_trace_index_map(std::span<const int> keep, int n_sites);

}  // namespace thermochain::kernels
