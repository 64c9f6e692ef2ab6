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

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/errors.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/permutation.hpp"

namespace qdesign {

/// Condition-number guard for direct Gram inversion.
inline constexpr double kGramConditionLimit = 1e12;
/// Relative singular-value cutoff in pseudoinverse mode.
inline constexpr double kGramPinvCutoff = 1e-12;

/// Entry value q^(c-k) for cycle count c. Exact (dyadic) when q is a power
/// of two, which covers every dimension that occurs here (2, 4, 2^n).
inline double gram_entry(std::int64_t q, int c, int k) {
  if (q >= 1 && (q & (q - 1)) == 0) {
    int log2q = 0;
    while ((std::int64_t{1} << log2q) < q) ++log2q;
    return std::ldexp(1.0, log2q * (c - k));
  }
  return std::pow(static_cast<double>(q), c - k);
}

/// Gram matrix W of the k! permutation vectors at local dimension q:
/// W[s][t] = q^(c(sigma_s^{-1} sigma_t) - k), permutations indexed in
/// lexicographic one-line order. Symmetric with unit diagonal; positive
/// definite whenever q >= k.
inline RealMatrix gram_matrix(int k, std::int64_t q) {
  if (q < 2) throw std::invalid_argument("gram_matrix: q must be >= 2");
  const auto perms = all_permutations(k);
  const Index m = static_cast<Index>(perms.size());
  RealMatrix w(m, m);
  for (Index s = 0; s < m; ++s) {
    w(s, s) = 1.0;
    for (Index t = s + 1; t < m; ++t) {
      const int c = cycle_count(perms[s], perms[t]);
      const double v = gram_entry(q, c, k);
      w(s, t) = v;
      w(t, s) = v;
    }
  }
  return w;
}

struct GramInverse {
  RealMatrix inv;
  bool pseudo = false;   // true when singular directions were dropped
  Index rank = 0;        // numerical rank (== size unless pseudo)
  double condition = 0;  // eigenvalue ratio before any truncation
};

/// Inverse (or pseudoinverse) of a Gram matrix via symmetric
/// eigendecomposition. Without `allow_pseudo`, a condition number beyond
/// kGramConditionLimit raises DegenerateGramError — that is the 2^n < k
/// regime where the product vectors stop being independent.
inline GramInverse invert_gram(const RealMatrix& w, bool allow_pseudo = false) {
  const auto eig = symmetric_eigendecomposition(w);
  const Index m = w.rows();
  const double lmax = eig.values[m - 1];
  const double lmin = eig.values[0];
  const double condition =
      lmin > 0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!allow_pseudo && !(condition <= kGramConditionLimit)) {
    throw DegenerateGramError(
        "Gram matrix condition number " + std::to_string(condition) +
        " exceeds " + std::to_string(kGramConditionLimit) +
        "; the permutation vectors are (numerically) dependent. "
        "Use pseudoinverse mode.");
  }
  const double cutoff = kGramPinvCutoff * lmax;
  RealVector inv_vals(m);
  Index rank = 0;
  for (Index i = 0; i < m; ++i) {
    if (eig.values[i] > cutoff) {
      inv_vals[i] = 1.0 / eig.values[i];
      ++rank;
    } else {
      inv_vals[i] = 0.0;
    }
  }
  GramInverse out;
  out.inv = eig.vectors * inv_vals.asDiagonal() * eig.vectors.transpose();
  out.pseudo = rank < m;
  out.rank = rank;
  out.condition = condition;
  return out;
}

/// W^(-1/2) for Löwdin orthonormalization of the product vectors.
/// Requires a positive definite Gram (2^n >= k).
inline RealMatrix gram_inverse_sqrt(const RealMatrix& w) {
  const auto eig = symmetric_eigendecomposition(w);
  const Index m = w.rows();
  const double lmax = eig.values[m - 1];
  if (!(eig.values[0] > kGramPinvCutoff * lmax))
    throw DegenerateGramError(
        "gram_inverse_sqrt: Gram matrix is numerically singular");
  RealVector inv_sqrt(m);
  for (Index i = 0; i < m; ++i) inv_sqrt[i] = 1.0 / std::sqrt(eig.values[i]);
  return eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose();
}

/// Unit vector |psi_sigma> in dimension (q^2)^k: the vectorized permutation
/// operator V_sigma on k copies of a q-dimensional space, divided by
/// q^(k/2). Index layout: k ket coordinates (copy 1 most significant)
/// followed by k bra coordinates.
inline ComplexVector permutation_vector(const Permutation& sigma,
                                        std::int64_t q) {
  const int k = static_cast<int>(sigma.size());
  if (k < 1) throw std::invalid_argument("permutation_vector: empty permutation");
  const std::int64_t qk = checked_ipow(q, k, std::int64_t{1} << 30);
  const std::int64_t dim = checked_ipow(qk, 2, std::int64_t{1} << 30);
  ComplexVector v = ComplexVector::Zero(dim);
  const Permutation inv = inverse_permutation(sigma);
  const double amp = 1.0 / std::sqrt(static_cast<double>(qk));
  std::vector<std::int64_t> y(k);
  for (std::int64_t ycode = 0; ycode < qk; ++ycode) {
    std::int64_t rest = ycode;
    for (int c = k - 1; c >= 0; --c) {
      y[c] = rest % q;
      rest /= q;
    }
    // x_a = y_{sigma^{-1}(a)}
    std::int64_t xcode = 0;
    for (int a = 0; a < k; ++a) xcode = xcode * q + y[inv[a]];
    v[xcode * qk + ycode] = amp;
  }
  return v;
}

/// Per-qubit (q = 2) permutation vectors in sparse form, the building block
/// of every moment-space operator: |psi_sigma>(q=2) lives in dimension 4^k
/// with exactly 2^k equal nonzero entries. Site-local index layout: k ket
/// bits (copy 1 most significant) then k bra bits.
struct SiteBasis {
  int k = 0;
  std::int64_t site_dim = 0;    // 4^k
  std::int64_t ket_dim = 0;     // 2^k
  double amplitude = 0;         // 2^(-k/2), the common nonzero value
  std::vector<Permutation> perms;                  // lexicographic
  std::vector<std::vector<std::int64_t>> support;  // [sigma][y] -> local index
};

inline SiteBasis make_site_basis(int k) {
  if (k < 1 || k > 12)
    throw std::invalid_argument("make_site_basis: k outside [1,12]");
  SiteBasis b;
  b.k = k;
  b.ket_dim = std::int64_t{1} << k;
  b.site_dim = b.ket_dim * b.ket_dim;
  b.amplitude = 1.0 / std::sqrt(static_cast<double>(b.ket_dim));
  b.perms = all_permutations(k);
  b.support.resize(b.perms.size());
  for (std::size_t s = 0; s < b.perms.size(); ++s) {
    const Permutation inv = inverse_permutation(b.perms[s]);
    auto& rows = b.support[s];
    rows.resize(b.ket_dim);
    for (std::int64_t y = 0; y < b.ket_dim; ++y) {
      std::int64_t x = 0;
      for (int a = 0; a < k; ++a) {
        // bit of copy (a+1) sits at position k-1-a from the LSB
        const std::int64_t ybit = (y >> (k - 1 - inv[a])) & 1;
        x |= ybit << (k - 1 - a);
      }
      rows[y] = x * b.ket_dim + y;
    }
  }
  return b;
}

}  // namespace qdesign
