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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdesign/rng.hpp"

namespace qdesign {

/// Pairwise (cascade) summation. Monte-Carlo reductions go through this so
/// that the result is independent of how samples were distributed over
/// threads, and rounding error grows like log(n) rather than n.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < n; ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) +
         pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

inline double sample_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("sample_mean: empty input");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

/// Unbiased sample variance.
inline double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mu = sample_mean(values);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mu;
    sq[i] = d * d;
  }
  return pairwise_sum<double>(sq) / static_cast<double>(n - 1);
}

/// Plain standard error of the mean, std/sqrt(n).
inline double standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  return std::sqrt(sample_variance(values) / static_cast<double>(n));
}

/// Quantile with linear interpolation between order statistics
/// (the "linear" convention: h = p*(n-1)).
inline double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
  if (lo == hi) return values[lo];
  const double w = h - static_cast<double>(lo);
  return (1.0 - w) * values[lo] + w * values[hi];
}

inline double median(std::vector<double> values) {
  return quantile(std::move(values), 0.5);
}

inline constexpr int kBootstrapResamples = 1000;

/// Bootstrap standard error of the sample mean: std-dev of resampled means
/// over `resamples` draws with replacement.
inline double bootstrap_se_mean(std::span<const double> values, RngStream rng,
                                int resamples = kBootstrapResamples) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::vector<double> means(resamples);
  std::vector<double> draw(n);
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < n; ++i)
      draw[i] = values[rng.uniform_int(n)];
    means[r] = sample_mean(draw);
  }
  const double centre = sample_mean(means);
  std::vector<double> sq(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double d = means[i] - centre;
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum<double>(sq) /
                   static_cast<double>(means.size() - 1));
}

}  // namespace qdesign
