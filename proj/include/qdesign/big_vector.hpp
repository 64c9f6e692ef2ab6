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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdesign/matrix.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

/// Default budget for state vectors: 4^10 complex amplitudes (16 MiB).
/// Large enough for every documented experiment; overridable per call site.
inline constexpr std::int64_t kDefaultMaxStateDim = std::int64_t{1} << 20;

/// State vector over n_sites sites of dimension local_dim each.
///
/// Index convention (fixed, global): site-major with site 1 most
/// significant, i.e. amplitude index = sum_s c_s * local_dim^(n_sites - s)
/// for per-site indices c_s. Every operator in this library, including
/// kron(), follows the same convention, so kron(a, b) acts on (site 1,
/// site 2) of a two-site vector.
struct BigVector {
  int n_sites = 0;
  std::int64_t local_dim = 0;
  ComplexVector amps;

  BigVector() = default;

  BigVector(int n_sites_, std::int64_t local_dim_, ComplexVector amps_)
      : n_sites(n_sites_), local_dim(local_dim_), amps(std::move(amps_)) {
    if (n_sites < 1 || local_dim < 1)
      throw std::invalid_argument("BigVector: need n_sites >= 1 and local_dim >= 1");
    if (amps.size() != dimension_of(n_sites, local_dim))
      throw std::invalid_argument("BigVector: amplitude count != local_dim^n_sites");
  }

  static std::int64_t dimension_of(int n_sites, std::int64_t local_dim,
                                   std::int64_t cap = (std::int64_t{1} << 34)) {
    return checked_ipow(local_dim, n_sites, cap);
  }

  std::int64_t dimension() const { return amps.size(); }

  static BigVector zero(int n_sites, std::int64_t local_dim) {
    return BigVector(n_sites, local_dim,
                     ComplexVector::Zero(dimension_of(n_sites, local_dim)));
  }

  static BigVector basis_state(int n_sites, std::int64_t local_dim,
                               std::int64_t index) {
    BigVector v = zero(n_sites, local_dim);
    if (index < 0 || index >= v.dimension())
      throw std::invalid_argument("basis_state: index out of range");
    v.amps[index] = 1.0;
    return v;
  }

  /// Normalized vector with iid complex-Gaussian amplitudes. For local_dim 2
  /// this is exactly a Haar-random pure state.
  static BigVector random_state(int n_sites, std::int64_t local_dim,
                                RngStream& rng) {
    BigVector v = zero(n_sites, local_dim);
    for (std::int64_t i = 0; i < v.dimension(); ++i)
      v.amps[i] = rng.complex_normal();
    v.amps /= v.amps.norm();
    return v;
  }

  double norm() const { return amps.norm(); }
};

namespace detail {

using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::int64_t insert_zero_bit(std::int64_t x, int pos) {
  const std::int64_t low = x & ((std::int64_t{1} << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

}  // namespace detail

/// out = (I ⊗ op_{site,site+1} ⊗ I) * in for an adjacent-pair operator
/// `op` of shape (d*d) x (d*d), 1-based site in [1, n_sites-1].
/// `out` must be a distinct, equally sized vector.
inline void apply_local_into(const ComplexMatrix& op, int site,
                             const BigVector& in, BigVector& out) {
  const std::int64_t d = in.local_dim;
  const std::int64_t m = d * d;
  if (op.rows() != m || op.cols() != m)
    throw std::invalid_argument(
        "apply_local: operator must be (local_dim^2) x (local_dim^2), got " +
        std::to_string(op.rows()) + "x" + std::to_string(op.cols()));
  if (site < 1 || site > in.n_sites - 1)
    throw std::invalid_argument("apply_local: site out of range");
  if (out.amps.size() != in.amps.size() || out.local_dim != d)
    throw std::invalid_argument("apply_local: output shape mismatch");

  std::int64_t left = 1;
  for (int s = 1; s < site; ++s) left *= d;
  const std::int64_t right = in.dimension() / (left * m);
  const Complex* src = in.amps.data();
  Complex* dst = out.amps.data();

  // Each left block is a dense (d^2 x right) panel with row stride `right`;
  // the pair operator application is one small GEMM per panel.
#pragma omp parallel for schedule(static) if (left > 1)
  for (std::int64_t l = 0; l < left; ++l) {
    Eigen::Map<const detail::RowMajorMatrix> in_block(src + l * m * right, m,
                                                      right);
    Eigen::Map<detail::RowMajorMatrix> out_block(dst + l * m * right, m,
                                                 right);
    out_block.noalias() = op * in_block;
  }
}

inline BigVector apply_local(const ComplexMatrix& op, int site,
                             const BigVector& in) {
  BigVector out = BigVector::zero(in.n_sites, in.local_dim);
  apply_local_into(op, site, in, out);
  return out;
}

/// In-place two-qubit gate on arbitrary qubits (qa, qb), qa != qb, for
/// local_dim-2 vectors. The 4x4 gate index pairs as (bit_a, bit_b) with
/// qubit qa the more significant bit, consistent with kron() for adjacent
/// qubits. Qubits are 1-based with qubit 1 most significant.
inline void apply_two_qubit_inplace(const ComplexMatrix& u, int qa, int qb,
                                    BigVector& state) {
  if (state.local_dim != 2)
    throw std::invalid_argument("apply_two_qubit: local_dim must be 2");
  if (u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("apply_two_qubit: gate must be 4x4");
  const int n = state.n_sites;
  if (qa < 1 || qa > n || qb < 1 || qb > n || qa == qb)
    throw std::invalid_argument("apply_two_qubit: qubit index out of range");

  const int pa = n - qa;  // bit position from LSB
  const int pb = n - qb;
  const int hi = pa > pb ? pa : pb;
  const int lo = pa > pb ? pb : pa;
  const std::int64_t step_a = std::int64_t{1} << pa;
  const std::int64_t step_b = std::int64_t{1} << pb;
  const std::int64_t quarter = state.dimension() / 4;
  Complex* v = state.amps.data();

  const Complex u00 = u(0, 0), u01 = u(0, 1), u02 = u(0, 2), u03 = u(0, 3);
  const Complex u10 = u(1, 0), u11 = u(1, 1), u12 = u(1, 2), u13 = u(1, 3);
  const Complex u20 = u(2, 0), u21 = u(2, 1), u22 = u(2, 2), u23 = u(2, 3);
  const Complex u30 = u(3, 0), u31 = u(3, 1), u32 = u(3, 2), u33 = u(3, 3);

#pragma omp parallel for schedule(static) if (quarter >= (std::int64_t{1} << 14))
  for (std::int64_t base = 0; base < quarter; ++base) {
    const std::int64_t idx =
        detail::insert_zero_bit(detail::insert_zero_bit(base, lo), hi);
    const std::int64_t i00 = idx;
    const std::int64_t i01 = idx + step_b;
    const std::int64_t i10 = idx + step_a;
    const std::int64_t i11 = idx + step_a + step_b;
    const Complex a = v[i00], b = v[i01], c = v[i10], e = v[i11];
    v[i00] = u00 * a + u01 * b + u02 * c + u03 * e;
    v[i01] = u10 * a + u11 * b + u12 * c + u13 * e;
    v[i10] = u20 * a + u21 * b + u22 * c + u23 * e;
    v[i11] = u30 * a + u31 * b + u32 * c + u33 * e;
  }
}

}  // namespace qdesign
