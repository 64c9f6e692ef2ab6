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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/big_vector.hpp"
#include "qdesign/circuit.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/moment_basis.hpp"
#include "qdesign/numerics.hpp"
#include "qdesign/permutation.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

/// A k-th moment state: n sites of local dimension 4^k, site-major.
/// Per site the 2k bits order as (k ket-copy bits, k bra-copy bits), copy 1
/// most significant within each block.
using MomentState = BigVector;

/// Precomputed machinery for the k-th moment space of n qubits: the sparse
/// per-site permutation vectors, the pair Gram data behind P_{i,i+1}, and
/// the global Gram data behind the Haar projector.
struct MomentContext {
  int n = 0;
  int k = 0;
  std::int64_t site_dim = 0;  // 4^k
  std::int64_t dim = 0;       // (4^k)^n
  SiteBasis basis;

  RealMatrix pair_gram;            // q = 4
  RealMatrix pair_proj_coeff;      // 4^{-k} * inv(pair_gram)
  std::vector<std::vector<std::int64_t>> pair_support;  // [sigma] -> 4^k idxs

  RealMatrix global_gram;          // q = 2^n
  RealMatrix global_proj_coeff;    // 2^{-nk} * (pseudo)inv(global_gram)
  bool global_gram_pseudo = false;
  Index global_rank = 0;
  std::vector<std::vector<std::int64_t>> global_support;  // [sigma] -> 2^{nk}
  double global_amp = 0;           // 2^{-nk/2}

  std::int64_t perm_count() const {
    return static_cast<std::int64_t>(basis.perms.size());
  }
};

inline MomentContext make_moment_context(
    int n, int k, bool allow_pseudo_gram = false,
    std::int64_t max_dim = kDefaultMaxStateDim) {
  if (n < 1) throw std::invalid_argument("moment context: n must be >= 1");
  if (k < 1 || k > 12)
    throw std::invalid_argument("moment context: k outside [1,12]");
  MomentContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.basis = make_site_basis(k);
  ctx.site_dim = ctx.basis.site_dim;
  // Feasibility first, and name the wall: dim = (4^k)^n = 4^(k n).
  std::int64_t dim = 1;
  for (int s = 0; s < n; ++s) {
    if (dim > max_dim / ctx.site_dim) {
      int n_max = 0;
      std::int64_t d = 1;
      while (d <= max_dim / ctx.site_dim) {
        d *= ctx.site_dim;
        ++n_max;
      }
      throw CapacityError(
          "moment space dimension 4^(" + std::to_string(k) + "*" +
          std::to_string(n) + ") exceeds the state budget " +
          std::to_string(max_dim) + "; max feasible n for k=" +
          std::to_string(k) + " is " + std::to_string(n_max));
    }
    dim *= ctx.site_dim;
  }
  ctx.dim = dim;

  const std::int64_t m = ctx.perm_count();
  const double pair_amp_sq = std::ldexp(1.0, -2 * k);  // (2^{-k})^2

  if (n >= 2) {
    ctx.pair_gram = gram_matrix(k, 4);
    // q = 4 >= 2 can still be degenerate for k > 4? No: positive definite
    // whenever q >= k, and k <= 4 covers it; guard handles the rest.
    const GramInverse gi = invert_gram(ctx.pair_gram, /*allow_pseudo=*/k > 4);
    ctx.pair_proj_coeff = pair_amp_sq * gi.inv;
    ctx.pair_support.resize(m);
    for (std::int64_t s = 0; s < m; ++s) {
      auto& sup = ctx.pair_support[s];
      sup.resize(ctx.basis.ket_dim * ctx.basis.ket_dim);
      std::int64_t idx = 0;
      for (std::int64_t y1 = 0; y1 < ctx.basis.ket_dim; ++y1)
        for (std::int64_t y2 = 0; y2 < ctx.basis.ket_dim; ++y2, ++idx)
          sup[idx] = ctx.basis.support[s][y1] * ctx.site_dim +
                     ctx.basis.support[s][y2];
    }
  }

  ctx.global_gram = gram_matrix(k, std::int64_t{1} << n);
  const GramInverse gg = invert_gram(ctx.global_gram, allow_pseudo_gram);
  ctx.global_gram_pseudo = gg.pseudo;
  ctx.global_rank = gg.rank;
  ctx.global_amp = 1.0 / std::sqrt(std::ldexp(1.0, n * k));
  ctx.global_proj_coeff = (ctx.global_amp * ctx.global_amp) * gg.inv;

  // Support of the product vector Psi_sigma = psi_sigma(2)^{tensor n}:
  // exactly 2^{nk} equal entries of size 2^{-nk/2}.
  ctx.global_support.resize(m);
  const std::int64_t ket = ctx.basis.ket_dim;
  std::int64_t count = 1;
  for (int s = 0; s < n; ++s) count *= ket;
  std::vector<std::int64_t> y(n, 0);
  for (std::int64_t s = 0; s < m; ++s) {
    auto& sup = ctx.global_support[s];
    sup.resize(count);
    std::fill(y.begin(), y.end(), 0);
    for (std::int64_t c = 0; c < count; ++c) {
      std::int64_t idx = 0;
      for (int site = 0; site < n; ++site)
        idx = idx * ctx.site_dim + ctx.basis.support[s][y[site]];
      sup[c] = idx;
      for (int site = n - 1; site >= 0; --site) {  // odometer
        if (++y[site] < ket) break;
        y[site] = 0;
      }
    }
  }
  return ctx;
}

/// Product permutation vector Psi_sigma (unit norm), site-major.
inline MomentState product_permutation_vector(const MomentContext& ctx,
                                              std::int64_t sigma_index) {
  if (sigma_index < 0 || sigma_index >= ctx.perm_count())
    throw std::invalid_argument("product_permutation_vector: bad index");
  MomentState v = BigVector::zero(ctx.n, ctx.site_dim);
  for (const std::int64_t idx : ctx.global_support[sigma_index])
    v.amps[idx] = ctx.global_amp;
  return v;
}

namespace detail {

/// acc += P_{site,site+1} * in, the pair-block projector onto the span of
/// the k! pair permutation vectors. Works fiber-wise: coefficients against
/// the (sparse) pair vectors, a k! x k! solve via the precomputed
/// coefficient matrix, then reconstruction. Never materializes the
/// 16^k x 16^k matrix.
inline void accumulate_pair_projector(const MomentContext& ctx, int site,
                                      const MomentState& in, MomentState& acc) {
  const std::int64_t d = ctx.site_dim;
  const std::int64_t m2 = d * d;
  std::int64_t left = 1;
  for (int s = 1; s < site; ++s) left *= d;
  const std::int64_t right = ctx.dim / (left * m2);
  const std::int64_t nperm = ctx.perm_count();

  constexpr std::int64_t kBlock = 2048;
  const std::int64_t rblocks = (right + kBlock - 1) / kBlock;
  const std::int64_t tasks = left * rblocks;
  const Complex* src = in.amps.data();
  Complex* dst = acc.amps.data();

#pragma omp parallel
  {
    std::vector<Complex> c(nperm * kBlock), dcoef(nperm * kBlock);
#pragma omp for schedule(static)
    for (std::int64_t task = 0; task < tasks; ++task) {
      const std::int64_t l = task / rblocks;
      const std::int64_t r0 = (task % rblocks) * kBlock;
      const std::int64_t rlen = std::min(kBlock, right - r0);
      const std::int64_t base = l * m2 * right + r0;

      // c[tau][r] = sum over the support of phi_tau
      for (std::int64_t t = 0; t < nperm; ++t) {
        Complex* crow = c.data() + t * kBlock;
        std::fill(crow, crow + rlen, Complex(0, 0));
        for (const std::int64_t p : ctx.pair_support[t]) {
          const Complex* row = src + base + p * right;
          for (std::int64_t r = 0; r < rlen; ++r) crow[r] += row[r];
        }
      }
      // dcoef = (4^{-k} W^{-1}) c
      for (std::int64_t s = 0; s < nperm; ++s) {
        Complex* drow = dcoef.data() + s * kBlock;
        std::fill(drow, drow + rlen, Complex(0, 0));
        for (std::int64_t t = 0; t < nperm; ++t) {
          const double w = ctx.pair_proj_coeff(s, t);
          if (w == 0.0) continue;
          const Complex* crow = c.data() + t * kBlock;
          for (std::int64_t r = 0; r < rlen; ++r) drow[r] += w * crow[r];
        }
      }
      // acc += sum_sigma dcoef[sigma] * phi_sigma
      for (std::int64_t s = 0; s < nperm; ++s) {
        const Complex* drow = dcoef.data() + s * kBlock;
        for (const std::int64_t p : ctx.pair_support[s]) {
          Complex* row = dst + base + p * right;
          for (std::int64_t r = 0; r < rlen; ++r) row[r] += drow[r];
        }
      }
    }
  }
}

}  // namespace detail

/// P_{site,site+1} applied to a moment state (the exact local Haar
/// projector, i.e. the average of (U_{site,site+1})^{(x)k,k} over Haar U).
inline MomentState local_moment_projector_apply(const MomentContext& ctx,
                                                const MomentState& in,
                                                int site) {
  if (ctx.n < 2)
    throw std::invalid_argument("local projector: need n >= 2");
  if (site < 1 || site > ctx.n - 1)
    throw std::invalid_argument("local projector: site out of range [1, n-1]");
  if (in.n_sites != ctx.n || in.local_dim != ctx.site_dim)
    throw std::invalid_argument("local projector: state shape mismatch");
  MomentState out = BigVector::zero(ctx.n, ctx.site_dim);
  detail::accumulate_pair_projector(ctx, site, in, out);
  return out;
}

/// sum_i P_{i,i+1} * in, accumulated site by site.
inline void sum_local_projectors_into(const MomentContext& ctx,
                                      const MomentState& in, MomentState& out) {
  out.amps.setZero();
  for (int site = 1; site <= ctx.n - 1; ++site)
    detail::accumulate_pair_projector(ctx, site, in, out);
}

/// One step of the moment walk: G_nu = (1/(n-1)) sum_i P_{i,i+1}.
inline MomentState gnu_apply(const MomentContext& ctx, const MomentState& in) {
  if (ctx.n < 2) throw std::invalid_argument("gnu_apply: need n >= 2");
  if (in.n_sites != ctx.n || in.local_dim != ctx.site_dim)
    throw std::invalid_argument("gnu_apply: state shape mismatch");
  MomentState out = BigVector::zero(ctx.n, ctx.site_dim);
  sum_local_projectors_into(ctx, in, out);
  out.amps *= 1.0 / static_cast<double>(ctx.n - 1);
  return out;
}

/// Orthogonal projector onto span{Psi_sigma} (the fixed space of the
/// k-fold twirl), built from the global Gram matrix at q = 2^n. Requires a
/// nondegenerate Gram unless the context was created in pseudoinverse mode.
inline MomentState haar_projector_apply(const MomentContext& ctx,
                                        const MomentState& in) {
  if (in.n_sites != ctx.n || in.local_dim != ctx.site_dim)
    throw std::invalid_argument("haar_projector_apply: state shape mismatch");
  const std::int64_t m = ctx.perm_count();
  std::vector<Complex> c(m), d(m);
  for (std::int64_t s = 0; s < m; ++s) {
    Complex sum(0, 0);
    // Deterministic fixed-order accumulation; support size is sqrt(dim).
    for (const std::int64_t idx : ctx.global_support[s]) sum += in.amps[idx];
    c[s] = sum;
  }
  for (std::int64_t s = 0; s < m; ++s) {
    Complex sum(0, 0);
    for (std::int64_t t = 0; t < m; ++t)
      sum += ctx.global_proj_coeff(s, t) * c[t];
    d[s] = sum;
  }
  MomentState out = BigVector::zero(ctx.n, ctx.site_dim);
  for (std::int64_t s = 0; s < m; ++s) {
    if (d[s] == Complex(0, 0)) continue;
    for (const std::int64_t idx : ctx.global_support[s]) out.amps[idx] += d[s];
  }
  return out;
}

/// Trace of the Haar projector = dimension of its range (k! when 2^n >= k).
inline double haar_projector_trace(const MomentContext& ctx) {
  // tr G = sum_{s,t} coeff(s,t) <Psi_t|Psi_s> with <Psi_t|Psi_s> read off
  // the global Gram; the amplitude factors cancel by construction.
  const std::int64_t m = ctx.perm_count();
  double tr = 0;
  for (std::int64_t s = 0; s < m; ++s)
    for (std::int64_t t = 0; t < m; ++t)
      tr += (ctx.global_proj_coeff(s, t) / (ctx.global_amp * ctx.global_amp)) *
            ctx.global_gram(t, s);
  return tr;
}

// --- Dense builders (test oracles and small-system paths) ------------------

/// Dense P_{i,i+1} on the 16^k-dimensional pair block, site-major layout.
inline ComplexMatrix dense_pair_projector(const MomentContext& ctx) {
  if (ctx.n < 2) throw std::invalid_argument("dense_pair_projector: n >= 2");
  const std::int64_t dim = ctx.site_dim * ctx.site_dim;
  if (dim > kDenseCap)
    throw CapacityError("dense pair projector dimension 16^" +
                        std::to_string(ctx.k) + " exceeds " +
                        std::to_string(kDenseCap));
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  const std::int64_t m = ctx.perm_count();
  for (std::int64_t s = 0; s < m; ++s)
    for (std::int64_t t = 0; t < m; ++t) {
      const double w = ctx.pair_proj_coeff(s, t);
      if (w == 0.0) continue;
      for (const std::int64_t ps : ctx.pair_support[s])
        for (const std::int64_t pt : ctx.pair_support[t]) p(ps, pt) += w;
    }
  return p;
}

/// Dense G_nu = (1/(n-1)) sum_i I (x) P_{i,i+1} (x) I, site-major.
inline ComplexMatrix dense_gnu(const MomentContext& ctx) {
  if (ctx.n < 2) throw std::invalid_argument("dense_gnu: n >= 2");
  if (ctx.dim > kDenseCap)
    throw CapacityError("dense G_nu dimension " + std::to_string(ctx.dim) +
                        " exceeds " + std::to_string(kDenseCap));
  const ComplexMatrix p = dense_pair_projector(ctx);
  ComplexMatrix g = ComplexMatrix::Zero(ctx.dim, ctx.dim);
  for (int site = 1; site <= ctx.n - 1; ++site) {
    std::int64_t left = 1;
    for (int s = 1; s < site; ++s) left *= ctx.site_dim;
    const std::int64_t right = ctx.dim / (left * p.rows());
    ComplexMatrix embedded =
        kron(ComplexMatrix::Identity(left, left), p);
    embedded = kron(embedded, ComplexMatrix::Identity(right, right));
    g += embedded;
  }
  g *= 1.0 / static_cast<double>(ctx.n - 1);
  return g;
}

/// Dense Haar projector G = sum_{s,t} (W^-1)_{st} |Psi_s><Psi_t|, site-major.
inline ComplexMatrix dense_haar_projector(const MomentContext& ctx) {
  if (ctx.dim > kDenseCap)
    throw CapacityError("dense Haar projector dimension " +
                        std::to_string(ctx.dim) + " exceeds " +
                        std::to_string(kDenseCap));
  ComplexMatrix g = ComplexMatrix::Zero(ctx.dim, ctx.dim);
  const std::int64_t m = ctx.perm_count();
  for (std::int64_t s = 0; s < m; ++s)
    for (std::int64_t t = 0; t < m; ++t) {
      const double w = ctx.global_proj_coeff(s, t);
      if (w == 0.0) continue;
      for (const std::int64_t is : ctx.global_support[s])
        for (const std::int64_t it : ctx.global_support[t]) g(is, it) += w;
    }
  return g;
}

// --- Copy-major <-> site-major reshuffle ------------------------------------

/// Permutation taking a copy-major basis index (k ket copies of n qubits,
/// then k bra copies) to the site-major index used by MomentState.
inline std::vector<std::int64_t> site_index_from_copy_index(int n, int k) {
  const int nbits = 2 * n * k;
  const std::int64_t dim = std::int64_t{1} << nbits;
  if (dim > kDenseCap * kDenseCap)
    throw CapacityError("index map for 4^(n k) = " + std::to_string(dim) +
                        " is too large");
  // Bit position (from MSB) of (copy c, qubit q) in each layout.
  std::vector<int> site_pos(nbits);
  for (int bra = 0; bra < 2; ++bra)
    for (int c = 0; c < k; ++c)
      for (int q = 0; q < n; ++q) {
        const int copy_major = bra * n * k + c * n + q;
        const int site_major = q * 2 * k + bra * k + c;
        site_pos[copy_major] = site_major;
      }
  std::vector<std::int64_t> map(dim);
  for (std::int64_t ci = 0; ci < dim; ++ci) {
    std::int64_t si = 0;
    for (int p = 0; p < nbits; ++p) {
      if ((ci >> (nbits - 1 - p)) & 1)
        si |= std::int64_t{1} << (nbits - 1 - site_pos[p]);
    }
    map[ci] = si;
  }
  return map;
}

/// U^{(x)k} (x) (U*)^{(x)k} as a dense matrix in the site-major layout.
/// Filled directly from U^{(x)k} (entry (i,j) factors as a ket-block times
/// a conjugated bra-block element), which avoids materializing and then
/// permuting the copy-major Kronecker product.
inline ComplexMatrix moment_matrix_site_major(
    const ComplexMatrix& u, int n, int k,
    const std::vector<std::int64_t>& site_from_copy) {
  const ComplexMatrix uk = kron_power(u, k);
  const std::int64_t half = uk.rows();  // 2^{nk}
  const std::int64_t dim = static_cast<std::int64_t>(site_from_copy.size());
  std::vector<std::int64_t> ket(dim), bra(dim);
  for (std::int64_t ci = 0; ci < dim; ++ci) {
    const std::int64_t si = site_from_copy[ci];
    ket[si] = ci / half;
    bra[si] = ci % half;
  }
  ComplexMatrix out(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    const std::int64_t kj = ket[j], bj = bra[j];
    Complex* col = out.data() + j * dim;
    for (std::int64_t i = 0; i < dim; ++i)
      col[i] = uk(ket[i], kj) * std::conj(uk(bra[i], bj));
  }
  return out;
}

// --- Monte-Carlo estimation of G_mu -----------------------------------------

/// Dense Monte-Carlo estimate of G_mu with batch means kept for
/// bootstrapping. The bootstrap "sigma" for a reference R is the RMS
/// Frobenius deviation of resampled means around the estimate, i.e. the
/// size of the estimation noise measured in the same norm as the distance
/// ||mean - R||_F it is compared against.
struct MatrixMcEstimate {
  ComplexMatrix mean;
  std::int64_t samples = 0;
  std::vector<ComplexMatrix> batch_sums;
  std::vector<std::int64_t> batch_counts;

  /// sqrt(E_boot ||M* - mean||_F^2) over `resamples` batch resamplings.
  ///
  /// A resampled mean is a convex combination of the batch means, so its
  /// squared Frobenius deviation is a quadratic form in the batch-deviation
  /// Gram matrix. The Gram matrix is computed once (B^2/2 inner products);
  /// each resample then costs O(B^2) scalars instead of re-streaming the
  /// full matrices, which matters at dimension 4096.
  double bootstrap_frob_se(std::uint64_t seed = 0xb007,
                           int resamples = kBootstrapResamples) const {
    const std::size_t nb = batch_sums.size();
    if (nb < 2) return 0.0;
    std::vector<double> sum_dot_mean(nb);
    RealMatrix sum_gram(nb, nb);
    for (std::size_t a = 0; a < nb; ++a) {
      sum_dot_mean[a] = std::real(batch_sums[a].cwiseProduct(mean.conjugate())
                                      .sum());
      for (std::size_t b = a; b < nb; ++b) {
        const double g = std::real(
            batch_sums[a].cwiseProduct(batch_sums[b].conjugate()).sum());
        sum_gram(a, b) = g;
        sum_gram(b, a) = g;
      }
    }
    const double mean_sq = mean.squaredNorm();
    // G_ab = <M_a - mean, M_b - mean> with M_a = S_a / c_a.
    RealMatrix dev_gram(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        dev_gram(a, b) =
            sum_gram(a, b) / (batch_counts[a] * batch_counts[b]) -
            sum_dot_mean[a] / batch_counts[a] -
            sum_dot_mean[b] / batch_counts[b] + mean_sq;

    RngStream rng(seed, 0);
    std::vector<double> weight(nb);
    double acc = 0;
    for (int r = 0; r < resamples; ++r) {
      std::fill(weight.begin(), weight.end(), 0.0);
      double total = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t pick = rng.uniform_int(nb);
        weight[pick] += static_cast<double>(batch_counts[pick]);
        total += static_cast<double>(batch_counts[pick]);
      }
      double sq = 0;
      for (std::size_t a = 0; a < nb; ++a) {
        if (weight[a] == 0.0) continue;
        for (std::size_t b = 0; b < nb; ++b)
          sq += weight[a] * weight[b] * dev_gram(a, b);
      }
      acc += std::max(sq / (total * total), 0.0);
    }
    return std::sqrt(acc / resamples);
  }
};

/// Empirical mean over `samples` circuits of U^{(x)k} (x) (U*)^{(x)k} with
/// U = circuit_unitary, in the site-major layout (directly comparable to
/// dense_gnu / dense_haar_projector). Sample s draws its circuit from the
/// derived seed (spec.seed, s), so the estimate is reproducible and
/// independent of scheduling.
inline MatrixMcEstimate g_mu_estimate(const EnsembleSpec& spec, int k,
                                      std::int64_t samples, int batches = 100,
                                      std::int64_t memory_budget_bytes =
                                          std::int64_t{2} << 30) {
  spec.validate();
  if (samples < 1) throw std::invalid_argument("g_mu_estimate: samples >= 1");
  const std::int64_t dim =
      checked_ipow(std::int64_t{1} << (2 * k), spec.n_qubits,
                   std::int64_t{1} << 40);
  if (dim > kDenseCap)
    throw CapacityError("g_mu_estimate: dense dimension (4^" +
                        std::to_string(k) + ")^" +
                        std::to_string(spec.n_qubits) + " = " +
                        std::to_string(dim) + " exceeds " +
                        std::to_string(kDenseCap));
  int nb = static_cast<int>(std::min<std::int64_t>(batches, samples));
  const std::int64_t per_batch_bytes = dim * dim * 16;
  while (nb > 8 && static_cast<std::int64_t>(nb) * per_batch_bytes >
                       memory_budget_bytes)
    nb /= 2;
  if (static_cast<std::int64_t>(nb) * per_batch_bytes > memory_budget_bytes)
    throw CapacityError(
        "g_mu_estimate: batch-mean storage for bootstrap exceeds the memory "
        "budget at dimension " + std::to_string(dim));

  const auto site_from_copy = site_index_from_copy_index(spec.n_qubits, k);
  MatrixMcEstimate est;
  est.samples = samples;
  est.batch_sums.assign(nb, ComplexMatrix::Zero(dim, dim));
  est.batch_counts.assign(nb, 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (int b = 0; b < nb; ++b) {
    const std::int64_t lo = samples * b / nb;
    const std::int64_t hi = samples * (b + 1) / nb;
    EnsembleSpec draw = spec;
    for (std::int64_t s = lo; s < hi; ++s) {
      draw.seed = RngStream(spec.seed, static_cast<std::uint64_t>(s)).next_u64();
      const ComplexMatrix u = circuit_unitary(sample_circuit(draw));
      est.batch_sums[b] +=
          moment_matrix_site_major(u, spec.n_qubits, k, site_from_copy);
    }
    est.batch_counts[b] = hi - lo;
  }

  est.mean = ComplexMatrix::Zero(dim, dim);
  for (int b = 0; b < nb; ++b) est.mean += est.batch_sums[b];
  est.mean /= static_cast<double>(samples);
  return est;
}

// --- Monomial averages -------------------------------------------------------

/// A degree-(k,k) monomial q(U) = U_{i1 j1}..U_{ik jk} U*_{m1 n1}..U*_{mk nk}.
struct Monomial {
  std::vector<std::int64_t> i, j, m, n;

  int order() const { return static_cast<int>(i.size()); }

  void validate(int n_qubits) const {
    const std::size_t k = i.size();
    if (k == 0 || j.size() != k || m.size() != k || n.size() != k)
      throw std::invalid_argument("Monomial: index lists must share length k >= 1");
    const std::int64_t d = std::int64_t{1} << n_qubits;
    for (std::size_t a = 0; a < k; ++a)
      if (i[a] < 0 || i[a] >= d || j[a] < 0 || j[a] >= d || m[a] < 0 ||
          m[a] >= d || n[a] < 0 || n[a] >= d)
        throw std::invalid_argument("Monomial: index out of range [0, 2^n)");
  }
};

/// Exact Haar average of a monomial, read off the Haar projector:
/// <(i,m)| G_Haar |(j,n)> = 2^{-nk} sum_{s,t} (W^{-1})_{st} [i_a = m_{s^{-1}(a)}]
/// [j_a = n_{t^{-1}(a)}]. No sampling, no large matrices.
inline Complex moment_monomial_exact_haar(int n_qubits, const Monomial& mono,
                                          bool allow_pseudo = false) {
  mono.validate(n_qubits);
  const int k = mono.order();
  const auto perms = all_permutations(k);
  const RealMatrix w = gram_matrix(k, std::int64_t{1} << n_qubits);
  const GramInverse gi = invert_gram(w, allow_pseudo);
  const double scale = std::ldexp(1.0, -n_qubits * k);
  double value = 0;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    const Permutation sinv = inverse_permutation(perms[s]);
    bool ds = true;
    for (int a = 0; a < k && ds; ++a) ds = mono.i[a] == mono.m[sinv[a]];
    if (!ds) continue;
    for (std::size_t t = 0; t < perms.size(); ++t) {
      const Permutation tinv = inverse_permutation(perms[t]);
      bool dt = true;
      for (int a = 0; a < k && dt; ++a) dt = mono.j[a] == mono.n[tinv[a]];
      if (dt) value += gi.inv(s, t);
    }
  }
  return Complex(scale * value, 0.0);
}

struct ComplexMcEstimate {
  Complex mean;
  double std_error = 0;  // sqrt((Var Re + Var Im) / samples)
  std::int64_t samples = 0;
};

/// Monte-Carlo average of a monomial over an ensemble of circuits. Sample s
/// draws its circuit from the derived seed (spec.seed, s).
inline ComplexMcEstimate moment_monomial_avg(const EnsembleSpec& spec,
                                             const Monomial& mono,
                                             std::int64_t samples) {
  spec.validate();
  mono.validate(spec.n_qubits);
  if (samples < 1)
    throw std::invalid_argument("moment_monomial_avg: samples >= 1");
  const int k = mono.order();
  std::vector<Complex> values(samples);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t s = 0; s < samples; ++s) {
    EnsembleSpec draw = spec;
    draw.seed = RngStream(spec.seed, static_cast<std::uint64_t>(s)).next_u64();
    const ComplexMatrix u = circuit_unitary(sample_circuit(draw));
    Complex q(1, 0);
    for (int a = 0; a < k; ++a) q *= u(mono.i[a], mono.j[a]);
    for (int a = 0; a < k; ++a) q *= std::conj(u(mono.m[a], mono.n[a]));
    values[s] = q;
  }
  ComplexMcEstimate est;
  est.samples = samples;
  est.mean = pairwise_sum<Complex>(values) / static_cast<double>(samples);
  std::vector<double> re(samples), im(samples);
  for (std::int64_t s = 0; s < samples; ++s) {
    re[s] = values[s].real();
    im[s] = values[s].imag();
  }
  est.std_error = std::sqrt(
      (sample_variance(re) + sample_variance(im)) / samples);
  return est;
}

}  // namespace qdesign
