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

#pragma once

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "qdesign/qdesign.hpp"

namespace qdesign::test {

/// Kolmogorov-Smirnov distance of samples against the uniform CDF on [0,1].
inline double ks_distance_uniform(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max(d, x - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - x);
  }
  return d;
}

inline ComplexMatrix random_hermitian_psd(Index dim, RngStream& rng) {
  const ComplexMatrix b = ginibre(dim, rng);
  return b.adjoint() * b / static_cast<double>(dim);
}

inline ComplexVector random_complex_vector(Index dim, RngStream& rng) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return v;
}

inline BigVector random_moment_state(const MomentContext& ctx, RngStream& rng) {
  BigVector v(ctx.n, ctx.site_dim, random_complex_vector(ctx.dim, rng));
  v.amps /= v.amps.norm();
  return v;
}

/// Scratch directory for CLI tests, unique per call.
inline std::string scratch_dir(const std::string& tag) {
  auto path = std::filesystem::temp_directory_path() /
              ("qdesign_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(path);
  return path.string();
}

}  // namespace qdesign::test
