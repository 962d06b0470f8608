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

#include <doctest.h>

#include <array>

#include "support.hpp"
#include "thermochain/linalg.hpp"

using namespace thermochain;
using testing::max_abs;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("kron of small matrices") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  CHECK(max_abs(kron(diag({1, -1}), identity(2)) - diag({1, 1, -1, -1})) == 0.0);
}

TEST_CASE("kron(sigma+, sigma-) moves the excitation from the right site to the left") {
  // σ+ = |1><0| and σ- = |0><1|; the product sends |q0 q1> = |01> to |10>,
  // i.e. basis index 1 to index 2, and annihilates everything else.
  const ComplexMatrix k = kron(sigma_plus(), sigma_minus());
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(2, 1) = 1.0;
  CHECK(max_abs(k - expected) == 0.0);
  const ComplexVector out = k * basis_ket(1, 4);
  CHECK(std::abs(out(2) - Complex{1.0, 0.0}) == 0.0);
  CHECK(out.norm() == doctest::Approx(1.0));
}

TEST_CASE("kron is associative") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_matrix(2, 3), b = testing::random_matrix(3, 2), c = testing::random_matrix(2, 2);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-13);
  }
}

TEST_CASE("single-qubit operators follow the excited-|1> convention") {
  CHECK((sigma_z() * basis_ket(1, 2) - basis_ket(1, 2)).norm() == 0.0);
  CHECK((sigma_z() * basis_ket(0, 2) + basis_ket(0, 2)).norm() == 0.0);
  CHECK((sigma_plus() * basis_ket(0, 2) - basis_ket(1, 2)).norm() == 0.0);
  CHECK(max_abs(sigma_minus() - sigma_plus().adjoint()) == 0.0);
  // σy = i(σ- − σ+) is the standard Pauli Y up to the basis convention.
  CHECK(max_abs(sigma_y() * sigma_y() - identity(2)) == 0.0);
  CHECK(max_abs(embed_site_operator(sigma_z(), 0, 2) - kron(sigma_z(), identity(2))) == 0.0);
  CHECK_THROWS_AS(embed_site_operator(sigma_z(), 2, 2), IndexOutOfRange);
}

TEST_CASE("hermitian_eig") {
  SUBCASE("diagonal input") {
    const auto e = hermitian_eig(diag({3, 1, 2}));
    CHECK(e.values(0) == 1.0);
    CHECK(e.values(1) == 2.0);
    CHECK(e.values(2) == 3.0);
    CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(0, 2)) == doctest::Approx(1.0));
  }
  SUBCASE("rejects non-Hermitian input") {
    ComplexMatrix m = identity(2);
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
  }
  SUBCASE("reconstruction on random matrices") {
    for (int dim : {1, 2, 7, 16, 64, 256}) {
      const ComplexMatrix h = testing::random_hermitian(dim);
      const auto e = hermitian_eig(h);
      const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
      CHECK((back - h).norm() / h.norm() <= 1e-12);
      CHECK(max_abs(e.vectors.adjoint() * e.vectors - identity(dim)) <= 1e-12);
      for (int i = 1; i < dim; ++i) CHECK(e.values(i - 1) <= e.values(i));
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(4));
  CHECK_THROWS_AS(DensityMatrix(diag({0.6, 0.6})), InvalidDensityMatrix);
  CHECK_THROWS_AS(DensityMatrix(diag({1.1, -0.1})), InvalidDensityMatrix);
  ComplexMatrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, InvalidDensityMatrix);
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.25, 0.25})), InvalidDensityMatrix);  // not 2^n
  CHECK(DensityMatrix::pure(basis_ket(5, 8)).n_sites() == 3);
}

TEST_CASE("partial_trace") {
  SUBCASE("product state keeps its factor") {
    const auto a = testing::random_state(2), b = testing::random_state(4);
    const DensityMatrix ab(kron(a.matrix(), b.matrix()));
    const std::array<int, 1> first{0};
    CHECK(max_abs(partial_trace(ab, first, 3).matrix() - a.matrix()) <= 1e-14);
    const std::array<int, 2> rest{1, 2};
    CHECK(max_abs(partial_trace(ab, rest, 3).matrix() - b.matrix()) <= 1e-14);
  }
  SUBCASE("W state on the outer qubits") {
    // Amplitudes of |W> on |q0 q1 q2> are 1/√3 on 100, 010, 001. Summing over
    // q1 leaves |10>,|01> coherent (q1 = 0) plus |00> alone (q1 = 1).
    ComplexVector w = ComplexVector::Zero(8);
    w(4) = w(2) = w(1) = 1.0 / std::sqrt(3.0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const int fi = ((i >> 1) << 2) | (q1 << 1) | (i & 1);
          const int fj = ((j >> 1) << 2) | (q1 << 1) | (j & 1);
          expected(i, j) += w(fi) * std::conj(w(fj));
        }
      }
    }
    ComplexMatrix literal = ComplexMatrix::Zero(4, 4);
    literal(0, 0) = literal(1, 1) = literal(2, 2) = literal(1, 2) = literal(2, 1) = 1.0 / 3.0;
    CHECK(max_abs(expected - literal) <= 1e-15);
    const std::array<int, 2> outer{0, 2};
    CHECK(max_abs(partial_trace(DensityMatrix::pure(w), outer, 3).matrix() - expected) <= 1e-15);
  }
  SUBCASE("maximally mixed") {
    const std::array<int, 2> outer{0, 2};
    CHECK(max_abs(partial_trace(DensityMatrix::maximally_mixed(8), outer, 3).matrix() - identity(4) / 4.0) <= 1e-15);
  }
  SUBCASE("keep order permutes the factors") {
    const auto a = testing::random_state(2), b = testing::random_state(2);
    const DensityMatrix ab(kron(a.matrix(), b.matrix()));
    const std::array<int, 2> swapped{1, 0};
    CHECK(max_abs(partial_trace(ab, swapped, 2).matrix() - kron(b.matrix(), a.matrix())) <= 1e-14);
  }
  SUBCASE("identity and trace preservation") {
    for (int n = 1; n <= 5; ++n) {
      const auto rho = testing::random_state(1 << n);
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      CHECK(max_abs(partial_trace(rho, all, n).matrix() - rho.matrix()) <= 1e-15);
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i) {
          if (mask & (1 << i)) keep.push_back(i);
        }
        CHECK(std::abs(partial_trace(rho, keep, n).matrix().trace() - Complex{1.0, 0.0}) <= 1e-12);
      }
    }
  }
  SUBCASE("errors") {
    const auto rho = DensityMatrix::maximally_mixed(4);
    const std::array<int, 1> bad{2};
    CHECK_THROWS_AS(partial_trace(rho, bad, 2), IndexOutOfRange);
    const std::array<int, 2> repeated{0, 0};
    CHECK_THROWS_AS(partial_trace(rho, repeated, 2), IndexOutOfRange);
    const std::array<int, 1> ok{0};
    CHECK_THROWS_AS(partial_trace(rho, ok, 3), DimMismatch);
  }
}

TEST_CASE("trace_distance") {
  const auto rho = testing::random_state(4);
  CHECK(trace_distance(rho, rho) <= 1e-15);
  CHECK(trace_distance(DensityMatrix::pure(basis_ket(0, 2)), DensityMatrix::pure(basis_ket(1, 2))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // I/2 − diag(3/4, 1/4) = diag(−1/4, 1/4).
  CHECK(trace_distance(DensityMatrix::maximally_mixed(2), DensityMatrix(diag({0.75, 0.25}))) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(trace_distance(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(4)), DimMismatch);

  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_state(8), b = testing::random_state(8), c = testing::random_state(8);
    const double ab = trace_distance(a, b), ba = trace_distance(b, a);
    CHECK(std::abs(ab - ba) <= 1e-12);
    CHECK(trace_distance(a, c) <= ab + trace_distance(b, c) + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
  }
}
