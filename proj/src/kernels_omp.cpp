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

#include <omp.h>

#include <algorithm>

#include "thermochain/kernels.hpp"

namespace thermochain::kernels::omp {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  const bool wide = ra * rb >= kParallelMinDim;
#pragma omp parallel for if (wide) schedule(static)
  for (Eigen::Index col = 0; col < ca * cb; ++col) {
    const Eigen::Index j = col / cb, l = col % cb;
    for (Eigen::Index i = 0; i < ra; ++i) {
      const Complex aij = a(i, j);
      for (Eigen::Index k = 0; k < rb; ++k) out(i * rb + k, col) = aij * b(k, l);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep, int n_sites) {
  const std::vector<int> map = partial_trace_index_map(keep, n_sites);
  const int kept_dim = 1 << static_cast<int>(keep.size());
  const int traced_dim = static_cast<int>(map.size()) / kept_dim;
  ComplexMatrix out(kept_dim, kept_dim);
  const bool wide = rho.rows() >= kParallelMinDim;
#pragma omp parallel for if (wide) schedule(static)
  for (int c = 0; c < kept_dim; ++c) {
    for (int r = 0; r < kept_dim; ++r) {
      Complex acc{0.0, 0.0};
      for (int t = 0; t < traced_dim; ++t) {
        acc += rho(map[r * traced_dim + t], map[c * traced_dim + t]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

void gemm(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const Eigen::Index rows = a.rows(), inner = a.cols(), cols = b.cols();
  c.setZero(rows, cols);
  const bool wide = rows >= kParallelMinDim;
#pragma omp parallel for if (wide) schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index m = 0; m < inner; ++m) {
      const Complex s = b(m, j);
      if (s == Complex{}) continue;
      for (Eigen::Index i = 0; i < rows; ++i) c(i, j) += a(i, m) * s;
    }
  }
}

void lindblad_rhs(const LindbladTerms& terms, const ComplexMatrix& rho, ComplexMatrix& out) {
  const int d = terms.dim();
  // Team start-up costs more than the whole evaluation for small systems.
  if (d < kParallelMinDim) return serial::lindblad_rhs(terms, rho, out);
  const Complex im{0.0, 1.0};
  const int n_jumps = static_cast<int>(terms.jumps.size());
  std::vector<ComplexMatrix> jumped(terms.jumps.size());
  for (auto& t : jumped) t.setZero(d, d);
  out.setZero(d, d);

#pragma omp parallel
  {
    // jumped[k] = J_k rho, one column per iteration
#pragma omp for collapse(2) schedule(static)
    for (int k = 0; k < n_jumps; ++k) {
      for (int j = 0; j < d; ++j) {
        const auto& op = terms.jumps[k].op;
        for (int m = 0; m < d; ++m) {
          const Complex s = rho(m, j);
          if (s == Complex{}) continue;
          for (int i = 0; i < d; ++i) jumped[k](i, j) += op(i, m) * s;
        }
      }
    }

#pragma omp for schedule(static)
    for (int j = 0; j < d; ++j) {
      for (int m = 0; m < d; ++m) {
        const Complex s = -im * rho(m, j);
        for (int i = 0; i < d; ++i) out(i, j) += terms.effective_h(i, m) * s;
      }
      for (int m = 0; m < d; ++m) {
        const Complex s = im * terms.effective_h_adjoint(m, j);
        for (int i = 0; i < d; ++i) out(i, j) += rho(i, m) * s;
      }
      for (int k = 0; k < n_jumps; ++k) {
        const auto& jump = terms.jumps[k];
        for (int m = 0; m < d; ++m) {
          const Complex s = jump.rate * jump.op_adjoint(m, j);
        if (s == Complex{}) continue;
          for (int i = 0; i < d; ++i) out(i, j) += jumped[k](i, m) * s;
        }
      }
    }
  }
}

ComplexMatrix assemble_superoperator(std::span<const Sandwich> terms, int dim) {
  const Eigen::Index d = dim;
  ComplexMatrix g = ComplexMatrix::Zero(d * d, d * d);
  const bool wide = d * d >= kParallelMinDim;
#pragma omp parallel for if (wide) schedule(static)
  for (Eigen::Index col = 0; col < d * d; ++col) {
    const Eigen::Index m = col % d, n = col / d;
    for (const auto& term : terms) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const Complex s = term.right(n, j);
        if (s == Complex{}) continue;
        for (Eigen::Index i = 0; i < d; ++i) g(i + d * j, col) += term.left(i, m) * s;
      }
    }
  }
  return g;
}

void superop_matvec(const ComplexMatrix& g, const ComplexVector& x, ComplexVector& y) {
  const Eigen::Index rows = g.rows(), cols = g.cols();
  y.setZero(rows);
  const bool wide = rows >= kParallelMinDim;
#pragma omp parallel if (wide)
  {
    // Each thread owns a contiguous row block and sweeps all columns in order.
    const Eigen::Index n_threads = omp_get_num_threads();
    const Eigen::Index tid = omp_get_thread_num();
    const Eigen::Index chunk = (rows + n_threads - 1) / n_threads;
    const Eigen::Index begin = std::min(rows, tid * chunk);
    const Eigen::Index end = std::min(rows, begin + chunk);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Complex s = x(c);
      for (Eigen::Index i = begin; i < end; ++i) y(i) += g(i, c) * s;
    }
  }
}

}  // namespace thermochain::kernels::omp
