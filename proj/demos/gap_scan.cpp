// Copyright 2026 The qdesign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal library walk-through: gaps, the design depth they imply, and the
// exact decay of the moment operator for a small chain.

#include <cstdio>

#include "qdesign/qdesign.hpp"

int main() {
  using namespace qdesign;

  std::printf("n    Delta(H_{n,1})   delta(n,1)   t(eps=0.01)\n");
  for (int n = 3; n <= 6; ++n) {
    const GapReport r = spectral_gap(n, 1);
    const DesignDepth d = design_depth(n, 1, 0.01);
    std::printf("%-4d %-16.10f %-12.10f %lld\n", n, r.gap, r.delta_walk,
                static_cast<long long>(d.t));
  }

  std::printf("\n||G_nu^t - G_Haar|| for n=3, k=2 against (1-delta)^t:\n");
  const DesignErrorTable table = design_error(3, 2, {1, 2, 5, 10});
  for (const auto& row : table.rows)
    std::printf("t=%-3lld error=%.12f predicted=%.12f\n",
                static_cast<long long>(row.t), row.error, row.predicted);
  return 0;
}
