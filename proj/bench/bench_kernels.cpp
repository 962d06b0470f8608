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

// Wall-clock comparison of the serial reference kernels and their OpenMP
// versions on Lindblad workloads of growing chain length.
//
//   bench_kernels [max_qubits=7] [repeats=5]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include <omp.h>

#include "thermochain/dynamics.hpp"
#include "thermochain/kernels.hpp"

using namespace thermochain;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex{normal(rng), normal(rng)};
  return m;
}

// Best of `repeats`, in milliseconds.
double best_ms(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, int n, int repeats, const std::function<void()>& serial,
         const std::function<void()>& parallel) {
  const double s = best_ms(repeats, serial);
  const double p = best_ms(repeats, parallel);
  std::printf("%-22s %3d %12.4f %12.4f %8.2f\n", kernel, n, s, p, s / p);
}

}  // namespace

int main(int argc, char** argv) {
  const int max_qubits = argc > 1 ? std::atoi(argv[1]) : 7;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937_64 rng(7);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %3s %12s %12s %8s\n", "kernel", "n", "serial_ms", "omp_ms", "speedup");
  for (int n = 3; n <= max_qubits; ++n) {
    const int d = 1 << n;
    const auto spec = model::ChainSpec::end_coupled(n, 4.0, 1.0, 0.02, 5.0, 0.02, 3.0);
    const auto l = dynamics::build_liouvillian(spec);
    const ComplexMatrix rho = random_matrix(d, d, rng);
    ComplexMatrix out;

    row("lindblad_rhs", n, repeats, [&] { kernels::serial::lindblad_rhs(l.terms(), rho, out); },
        [&] { kernels::omp::lindblad_rhs(l.terms(), rho, out); });

    const ComplexMatrix b = random_matrix(d, d, rng);
    row("gemm", n, repeats, [&] { kernels::serial::gemm(rho, b, out); }, [&] { kernels::omp::gemm(rho, b, out); });

    const ComplexMatrix half = random_matrix(d / 2, d / 2, rng);
    const ComplexMatrix two = random_matrix(2, 2, rng);
    row("kron", n, repeats, [&] { out = kernels::serial::kron(half, two); },
        [&] { out = kernels::omp::kron(half, two); });

    const int keep[] = {0, n - 1};
    row("partial_trace", n, repeats, [&] { out = kernels::serial::partial_trace(rho, keep, n); },
        [&] { out = kernels::omp::partial_trace(rho, keep, n); });

    if (d * d <= 1024) {
      std::vector<kernels::Sandwich> terms;
      for (int k = 0; k < 4; ++k) terms.push_back({random_matrix(d, d, rng), random_matrix(d, d, rng)});
      row("assemble_superoperator", n, repeats,
          [&] { out = kernels::serial::assemble_superoperator(terms, d); },
          [&] { out = kernels::omp::assemble_superoperator(terms, d); });
    }
    if (l.has_generator()) {
      const ComplexVector x = dynamics::vectorize(rho);
      ComplexVector y;
      row("superop_matvec", n, repeats, [&] { kernels::serial::superop_matvec(l.generator(), x, y); },
          [&] { kernels::omp::superop_matvec(l.generator(), x, y); });
    }
  }
  return 0;
}
