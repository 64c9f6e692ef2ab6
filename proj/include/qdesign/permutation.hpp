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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qdesign {

/// Permutation of {0,..,k-1} in one-line notation: p[i] is the image of i.
using Permutation = std::vector<int>;

inline std::int64_t factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial: k outside [0,20]");
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline Permutation identity_permutation(int k) {
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// All k! permutations in lexicographic one-line order. This ordering is
/// the documented index convention for Gram matrices and basis vectors.
inline std::vector<Permutation> all_permutations(int k) {
  if (k < 1 || k > 12)
    throw std::invalid_argument("all_permutations: k outside [1,12]");
  std::vector<Permutation> out;
  out.reserve(factorial(k));
  Permutation p = identity_permutation(k);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

/// Composition (s ∘ t)(i) = s(t(i)).
inline Permutation compose(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("compose: size mismatch");
  Permutation out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[t[i]];
  return out;
}

/// Number of cycles of a single permutation (fixed points count as cycles).
inline int cycle_count(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<std::size_t>(p[j]);
    }
  }
  return cycles;
}

/// Cycles of sigma^{-1} tau — the exponent in the Gram-matrix entries
/// q^(c(sigma^{-1} tau) - k).
inline int cycle_count(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size())
    throw std::invalid_argument("cycle_count: permutation sizes differ");
  return cycle_count(compose(inverse_permutation(sigma), tau));
}

}  // namespace qdesign
