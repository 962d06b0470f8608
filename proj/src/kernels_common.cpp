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

#include <algorithm>

namespace thermochain::kernels {

std::vector<int> partial_trace_index_map(std::span<const int> keep, int n_sites) {
  std::vector<int> traced;
  for (int s = 0; s < n_sites; ++s) {
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);
  }
  const int n_keep = static_cast<int>(keep.size());
  const int n_traced = static_cast<int>(traced.size());
  const int kept_dim = 1 << n_keep;
  const int traced_dim = 1 << n_traced;

  // Site s occupies bit (n_sites - 1 - s) of the full index.
  auto scatter = [n_sites](int local, std::span<const int> sites) {
    const int width = static_cast<int>(sites.size());
    int full = 0;
    for (int p = 0; p < width; ++p) {
      const int bit = (local >> (width - 1 - p)) & 1;
      full |= bit << (n_sites - 1 - sites[p]);
    }
    return full;
  };

  std::vector<int> map(static_cast<std::size_t>(kept_dim) * traced_dim);
  for (int r = 0; r < kept_dim; ++r) {
    const int kept_part = scatter(r, keep);
    for (int t = 0; t < traced_dim; ++t) {
      map[static_cast<std::size_t>(r) * traced_dim + t] = kept_part | scatter(t, traced);
    }
  }
  return map;
}

}  // namespace thermochain::kernels
