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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/lanczos.hpp"
#include "qdesign/moment_operator.hpp"

namespace qdesign {

/// The frustration-free chain H_{n,k} = (n-1)(I - G_nu) = sum_i (I - P_{i,i+1})
/// as a matvec handle over moment states. Hermitian, PSD, annihilates every
/// product permutation vector Psi_sigma.
class HamiltonianHnk {
 public:
  explicit HamiltonianHnk(std::shared_ptr<const MomentContext> ctx)
      : ctx_(std::move(ctx)) {
    if (ctx_->n < 2)
      throw std::invalid_argument("HamiltonianHnk: need n >= 2");
  }

  static HamiltonianHnk make(int n, int k,
                             std::int64_t max_dim = kDefaultMaxStateDim) {
    return HamiltonianHnk(std::make_shared<const MomentContext>(
        make_moment_context(n, k, /*allow_pseudo_gram=*/false, max_dim)));
  }

  const MomentContext& context() const { return *ctx_; }
  int n() const { return ctx_->n; }
  int k() const { return ctx_->k; }
  std::int64_t dimension() const { return ctx_->dim; }

  /// out = sum_i (in - P_i in) = (n-1) in - sum_i P_i in.
  void apply_into(const MomentState& in, MomentState& out) const {
    if (in.n_sites != ctx_->n || in.local_dim != ctx_->site_dim)
      throw std::invalid_argument("HamiltonianHnk: state shape mismatch");
    sum_local_projectors_into(*ctx_, in, out);
    out.amps = static_cast<double>(ctx_->n - 1) * in.amps - out.amps;
  }

  MomentState apply(const MomentState& in) const {
    MomentState out = BigVector::zero(ctx_->n, ctx_->site_dim);
    apply_into(in, out);
    return out;
  }

  /// Raw-vector matvec for the eigensolver.
  LinearOp as_linear_op() const {
    auto ctx = ctx_;
    return [ctx](const ComplexVector& in, ComplexVector& out) {
      MomentState vin(ctx->n, ctx->site_dim, in);
      MomentState vout = BigVector::zero(ctx->n, ctx->site_dim);
      sum_local_projectors_into(*ctx, vin, vout);
      out = static_cast<double>(ctx->n - 1) * in - vout.amps;
    };
  }

 private:
  std::shared_ptr<const MomentContext> ctx_;
};

inline MomentState h_apply(const HamiltonianHnk& h, const MomentState& state) {
  return h.apply(state);
}

/// Orthonormal basis of the ground space: the k! product vectors
/// Psi_sigma, Löwdin-orthonormalized with the global Gram matrix W^{-1/2}.
/// Requires 2^n >= k (nondegenerate Gram).
inline std::vector<MomentState> ground_space_basis(const MomentContext& ctx) {
  if ((std::int64_t{1} << ctx.n) < ctx.k)
    throw DegenerateGramError(
        "ground_space_basis: 2^n < k, the product vectors are dependent");
  const RealMatrix w_inv_sqrt = gram_inverse_sqrt(ctx.global_gram);
  const std::int64_t m = ctx.perm_count();
  std::vector<MomentState> out;
  out.reserve(m);
  for (std::int64_t a = 0; a < m; ++a) {
    MomentState v = BigVector::zero(ctx.n, ctx.site_dim);
    for (std::int64_t s = 0; s < m; ++s) {
      const double coef = ctx.global_amp * w_inv_sqrt(s, a);
      if (coef == 0.0) continue;
      for (const std::int64_t idx : ctx.global_support[s])
        v.amps[idx] += coef;
    }
    out.push_back(std::move(v));
  }
  return out;
}

enum class GapSolver { Auto, Dense, Iterative };

inline std::string to_string(GapSolver s) {
  switch (s) {
    case GapSolver::Auto: return "auto";
    case GapSolver::Dense: return "dense";
    case GapSolver::Iterative: return "iterative";
  }
  throw std::invalid_argument("unknown solver");
}

inline GapSolver gap_solver_from_string(const std::string& s) {
  if (s == "auto") return GapSolver::Auto;
  if (s == "dense") return GapSolver::Dense;
  if (s == "iterative") return GapSolver::Iterative;
  throw std::invalid_argument("unknown solver '" + s +
                              "' (expected auto | dense | iterative)");
}

struct GapOptions {
  GapSolver solver = GapSolver::Auto;
  double tol = 1e-10;
  std::uint64_t seed = 0x9a53;
  std::int64_t max_dim = kDefaultMaxStateDim;
  std::int64_t dense_cap = kDenseCap;  // dense eigensolve at or below this
  std::int64_t max_iterations = 0;     // 0 = solver default
};

struct GapReport {
  int n = 0;
  int k = 0;
  double gap = 0;         // Delta(H_{n,k})
  double delta_walk = 0;  // delta(n,k) = Delta / (n-1)
  std::string solver;     // "dense" | "iterative"
  double residual = 0;    // ||H v - Delta v|| for the reported eigenpair
  std::uint64_t seed = 0;
  double wall_time_s = 0;
  std::int64_t iterations = 0;  // matvecs (0 for dense)
};

/// delta(n,k) = Delta(H_{n,k}) / (n-1), the walk's spectral quantity.
inline double delta(const GapReport& report) {
  return report.gap / static_cast<double>(report.n - 1);
}

/// Spectral gap of H_{n,k}: the smallest eigenvalue on the orthogonal
/// complement of the k!-dimensional ground space. Dense eigendecomposition
/// at or below dense_cap, deflated Lanczos above.
inline GapReport spectral_gap(int n, int k, const GapOptions& options = {}) {
  if (n < 2) throw std::invalid_argument("spectral_gap: n must be >= 2");
  if ((std::int64_t{1} << n) < k)
    throw DegenerateGramError(
        "spectral_gap: requires 2^n >= k (nondegenerate ground space)");
  const auto t0 = std::chrono::steady_clock::now();
  auto ctx = std::make_shared<const MomentContext>(
      make_moment_context(n, k, false, options.max_dim));
  const HamiltonianHnk h(ctx);
  const std::int64_t ground_dim = ctx->perm_count();

  GapReport report;
  report.n = n;
  report.k = k;
  report.seed = options.seed;

  const bool dense = options.solver == GapSolver::Dense ||
                     (options.solver == GapSolver::Auto &&
                      ctx->dim <= options.dense_cap);
  if (dense) {
    if (ctx->dim > options.dense_cap)
      throw CapacityError("spectral_gap: dense solver requested at dimension " +
                          std::to_string(ctx->dim) + " > " +
                          std::to_string(options.dense_cap));
    ComplexMatrix hm = -dense_gnu(*ctx);
    hm.diagonal().array() += 1.0;
    hm *= static_cast<double>(n - 1);
    const auto eig = hermitian_smallest_eigenpairs(hm, ground_dim + 1);
    // Sanity: the k! lowest eigenvalues are the (numerically zero) ground
    // space; the gap is the next one up.
    if (std::abs(eig.values[ground_dim - 1]) > 1e-8)
      throw std::runtime_error(
          "spectral_gap: ground-space multiplicity mismatch (lambda_{k!-1} = " +
          std::to_string(eig.values[ground_dim - 1]) + ")");
    report.gap = eig.values[ground_dim];
    const ComplexVector v = eig.vectors.col(ground_dim);
    MomentState vs(n, ctx->site_dim, v);
    const MomentState hv = h.apply(vs);
    report.residual = (hv.amps - report.gap * v).norm();
    report.solver = "dense";
  } else {
    std::vector<ComplexVector> deflation;
    for (auto& g : ground_space_basis(*ctx))
      deflation.push_back(std::move(g.amps));
    LanczosOptions lopt;
    lopt.tol = options.tol;
    lopt.seed = options.seed;
    lopt.max_iterations = options.max_iterations;
    const LanczosResult res = smallest_eigenvalue_deflated(
        h.as_linear_op(), ctx->dim, deflation, lopt);
    report.gap = res.value;
    report.residual = res.residual;
    report.iterations = res.iterations;
    report.solver = "iterative";
  }
  report.delta_walk = report.gap / static_cast<double>(n - 1);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

struct DesignDepth {
  int n = 0;
  int k = 0;
  double eps = 0;
  std::int64_t t = 0;  // ceil(delta^{-1} ln(1/eps))
  GapReport gap;
};

/// Circuit length guaranteeing ||G_nu^t - G_Haar|| <= eps: the smallest
/// integer t >= delta(n,k)^{-1} ln(1/eps). Natural log, since the bound
/// comes from (1-delta)^t <= exp(-delta t).
inline DesignDepth design_depth(int n, int k, double eps,
                                const GapOptions& options = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("design_depth: eps must lie in (0,1)");
  DesignDepth d;
  d.n = n;
  d.k = k;
  d.eps = eps;
  d.gap = spectral_gap(n, k, options);
  const double raw = std::log(1.0 / eps) / d.gap.delta_walk;
  d.t = static_cast<std::int64_t>(std::ceil(raw - 1e-12));
  return d;
}

/// Default block size in the gap-threshold lemma: ceil(2.5 log_base(4k)).
/// The paper leaves the base unstated; base 2 (the qubit-count convention)
/// gives m = 5 for k = 1.
inline int nachtergaele_default_m(int k, double log_base = 2.0) {
  const double v = 2.5 * std::log(4.0 * k) / std::log(log_base);
  return static_cast<int>(std::ceil(v - 1e-12));
}

struct NachtergaeleRow {
  int n = 0;
  double lhs = 0;    // Delta(H_{n,k})
  double rhs = 0;    // Delta(H_{m,k}) / (4m)
  double ratio = 0;  // lhs / rhs
  bool holds = false;
};

struct NachtergaeleReport {
  int k = 0;
  int m = 0;
  bool m_reduced = false;  // true when the default m was infeasible
  int m_default = 0;
  GapReport base;  // gap at the block size m
  std::vector<NachtergaeleRow> rows;
  bool all_hold = true;
};

/// Numerical check of the finite-size criterion
/// Delta(H_{n,k}) >= Delta(H_{m,k}) / (4m) for each n in n_list.
/// m = 0 selects the default block size; if that is infeasible within the
/// state budget the largest feasible m is used and flagged.
inline NachtergaeleReport nachtergaele_check(int k, int m,
                                             const std::vector<int>& n_list,
                                             const GapOptions& options = {}) {
  if (n_list.empty())
    throw std::invalid_argument("nachtergaele_check: empty n list");
  NachtergaeleReport rep;
  rep.k = k;
  rep.m_default = nachtergaele_default_m(k);
  if (m == 0) {
    m = rep.m_default;
    // Largest block size that both fits the state budget and stays below
    // every chain length being checked.
    const int min_n = *std::min_element(n_list.begin(), n_list.end());
    if (m >= min_n) {
      m = min_n - 1;
      rep.m_reduced = true;
    }
    while (m > 2) {
      std::int64_t dim = 1;
      bool fits = true;
      for (int s = 0; s < m && fits; ++s) {
        if (dim > options.max_dim / (std::int64_t{1} << (2 * k))) fits = false;
        dim *= std::int64_t{1} << (2 * k);
      }
      if (fits) break;
      --m;
      rep.m_reduced = true;
    }
  }
  rep.m = m;
  for (const int n : n_list)
    if (m >= n)
      throw std::invalid_argument(
          "nachtergaele_check: m must be smaller than every n in n_list");
  rep.base = spectral_gap(m, k, options);
  const double rhs = rep.base.gap / (4.0 * m);
  for (const int n : n_list) {
    NachtergaeleRow row;
    row.n = n;
    row.lhs = spectral_gap(n, k, options).gap;
    row.rhs = rhs;
    row.ratio = row.lhs / rhs;
    row.holds = row.lhs >= rhs;
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

struct ScalingRow {
  int n = 0;
  double delta_walk = 0;
  double n_delta = 0;  // n * delta(n,k)
};

struct ScalingTable {
  int k = 0;
  std::vector<ScalingRow> rows;
  std::vector<GapReport> reports;  // full per-n solver reports
  double median_n_delta = 0;
  bool within_factor_2 = true;  // every n*delta within [median/2, 2*median]
  bool all_positive = true;
};

/// Consistency table for the delta(n,k) = Omega(1/n) scaling at fixed k:
/// n * delta(n,k) should stay within a factor 2 of its median across the
/// range (the unknown constant forbids anything sharper).
inline ScalingTable scaling_check(int k, const std::vector<int>& n_list,
                                  const GapOptions& options = {}) {
  if (n_list.empty())
    throw std::invalid_argument("scaling_check: empty n list");
  ScalingTable table;
  table.k = k;
  std::vector<double> nd;
  for (const int n : n_list) {
    GapReport r = spectral_gap(n, k, options);
    ScalingRow row;
    row.n = n;
    row.delta_walk = r.delta_walk;
    row.n_delta = n * r.delta_walk;
    table.all_positive = table.all_positive && row.delta_walk > 0;
    nd.push_back(row.n_delta);
    table.rows.push_back(row);
    table.reports.push_back(std::move(r));
  }
  table.median_n_delta = median(nd);
  for (const double v : nd)
    if (v > 2.0 * table.median_n_delta || v < 0.5 * table.median_n_delta)
      table.within_factor_2 = false;
  return table;
}

}  // namespace qdesign
