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

#include "thermochain/kernels.hpp"

namespace thermochain::kernels::serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
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
  const Complex im{0.0, 1.0};
  std::vector<ComplexMatrix> jumped(terms.jumps.size());
  for (std::size_t k = 0; k < terms.jumps.size(); ++k) gemm(terms.jumps[k].op, rho, jumped[k]);

  out.setZero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int m = 0; m < d; ++m) {
      const Complex s = -im * rho(m, j);
      for (int i = 0; i < d; ++i) out(i, j) += terms.effective_h(i, m) * s;
    }
    for (int m = 0; m < d; ++m) {
      const Complex s = im * terms.effective_h_adjoint(m, j);
      for (int i = 0; i < d; ++i) out(i, j) += rho(i, m) * s;
    }
    for (std::size_t k = 0; k < terms.jumps.size(); ++k) {
      const auto& jump = terms.jumps[k];
      for (int m = 0; m < d; ++m) {
        const Complex s = jump.rate * jump.op_adjoint(m, j);
        if (s == Complex{}) continue;
        for (int i = 0; i < d; ++i) out(i, j) += jumped[k](i, m) * s;
      }
    }
  }
}

ComplexMatrix assemble_superoperator(std::span<const Sandwich> terms, int dim) {
  const Eigen::Index d = dim;
  ComplexMatrix g = ComplexMatrix::Zero(d * d, d * d);
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
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex s = x(c);
    for (Eigen::Index i = 0; i < rows; ++i) y(i) += g(i, c) * s;
  }
}

}  // namespace thermochain::kernels::serial
