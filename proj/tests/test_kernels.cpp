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

#include <algorithm>
#include <array>

#include "support.hpp"
#include "thermochain/dynamics.hpp"
#include "thermochain/kernels.hpp"

using namespace thermochain;
using testing::max_abs;

// The OpenMP kernels promise the serial summation order, hence exact equality.
TEST_CASE("serial and OpenMP kernels agree bitwise") {
  for (int n : {2, 3, 5, 6}) {
    const int d = 1 << n;
    CAPTURE(n);
    const ComplexMatrix a = testing::random_matrix(d, d), b = testing::random_matrix(d, d);

    ComplexMatrix c1, c2;
    kernels::serial::gemm(a, b, c1);
    kernels::omp::gemm(a, b, c2);
    CHECK(max_abs(c1 - c2) == 0.0);
    CHECK(max_abs(c1 - a * b) <= 1e-12 * d);

    const ComplexMatrix small = testing::random_matrix(2, 3);
    CHECK(max_abs(kernels::serial::kron(a, small) - kernels::omp::kron(a, small)) == 0.0);

    const std::array<int, 2> keep{n - 1, 0};
    CHECK(max_abs(kernels::serial::partial_trace(a, keep, n) - kernels::omp::partial_trace(a, keep, n)) == 0.0);

    const auto spec = model::ChainSpec::end_coupled(n, 4.0, 1.0, 0.03, 2.0, 0.01, 0.7);
    const auto l = dynamics::build_liouvillian(spec);
    kernels::serial::lindblad_rhs(l.terms(), a, c1);
    kernels::omp::lindblad_rhs(l.terms(), a, c2);
    CHECK(max_abs(c1 - c2) == 0.0);

    if (l.has_generator()) {
      const ComplexVector x = dynamics::vectorize(a);
      ComplexVector y1, y2;
      kernels::serial::superop_matvec(l.generator(), x, y1);
      kernels::omp::superop_matvec(l.generator(), x, y2);
      CHECK(max_abs(y1 - y2) == 0.0);
      // The dense generator and the operator form describe the same map.
      CHECK(max_abs(dynamics::unvectorize(y1, d) - c1) <= 1e-12 * max_abs(c1));
    }
    if (d <= 32) {
      std::vector<kernels::Sandwich> terms;
      for (int k = 0; k < 3; ++k) terms.push_back({testing::random_matrix(d, d), testing::random_matrix(d, d)});
      CHECK(max_abs(kernels::serial::assemble_superoperator(terms, d) -
                    kernels::omp::assemble_superoperator(terms, d)) == 0.0);
    }
  }
}

TEST_CASE("assembled sandwich superoperator acts as left * X * right") {
  const int d = 4;
  std::vector<kernels::Sandwich> terms{{testing::random_matrix(d, d), testing::random_matrix(d, d)},
                                       {testing::random_matrix(d, d), testing::random_matrix(d, d)}};
  const ComplexMatrix g = kernels::serial::assemble_superoperator(terms, d);
  const ComplexMatrix x = testing::random_matrix(d, d);
  ComplexMatrix expected = ComplexMatrix::Zero(d, d);
  for (const auto& t : terms) expected += t.left * x * t.right;
  CHECK(max_abs(dynamics::unvectorize(g * dynamics::vectorize(x), d) - expected) <= 1e-13);
}

TEST_CASE("map_indexed keeps order and forwards exceptions") {
  const auto squares = kernels::omp::map_indexed<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(kernels::omp::map_indexed<int>(10,
                                                 [](std::size_t i) -> int {
                                                   if (i == 7) throw InvalidSpec("seven");
                                                   return 0;
                                                 }),
                  InvalidSpec);
}

TEST_CASE("partial_trace_index_map enumerates every basis index once") {
  const std::array<int, 2> keep{2, 0};
  const auto map = kernels::partial_trace_index_map(keep, 4);
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 16; ++i) CHECK(sorted[i] == i);
  // kept index 0b10 means site 2 = 1, site 0 = 0; traced index 0 leaves sites 1, 3 at 0.
  CHECK(map[2 * 4 + 0] == 0b0010);
}
