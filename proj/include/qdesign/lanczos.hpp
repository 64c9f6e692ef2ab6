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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qdesign/errors.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

/// Matrix-free Hermitian operator: out = A * in. `out` is preallocated and
/// distinct from `in`.
using LinearOp = std::function<void(const ComplexVector&, ComplexVector&)>;

struct LanczosOptions {
  /// Residual target relative to the spectral scale max|Ritz value|.
  double tol = 1e-10;
  /// 0 = auto: max(200, 10*sqrt(dim)).
  std::int64_t max_iterations = 0;
  /// Krylov basis size per restart cycle; 0 = auto (memory-aware).
  int cycle_length = 0;
  /// Seed for the random start vector; the whole run is deterministic
  /// given (seed, tol).
  std::uint64_t seed = 0x6b9fdb03;
};

struct LanczosResult {
  double value = 0.0;
  double residual = 0.0;  // ||A v - value * v||
  std::int64_t iterations = 0;
  ComplexVector vector;
};

namespace detail {

inline void project_out(const std::vector<ComplexVector>& basis,
                        ComplexVector& v) {
  for (const auto& b : basis) v -= b.dot(v) * b;
}

inline int auto_cycle_length(std::int64_t dim) {
  if (dim <= (std::int64_t{1} << 16)) return 220;
  if (dim <= (std::int64_t{1} << 18)) return 160;
  return 96;
}

struct TridiagEigen {
  RealVector values;  // ascending
  RealMatrix vectors;
};

inline TridiagEigen solve_tridiagonal(const std::vector<double>& alpha,
                                      const std::vector<double>& beta,
                                      int m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  RealVector d(m), e(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) d[i] = alpha[i];
  for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  es.computeFromTridiagonal(d, e);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace detail

/// Smallest eigenvalue of a Hermitian PSD operator restricted to the
/// orthogonal complement of `deflation` (an orthonormal list, e.g. a known
/// ground space). Restarted Lanczos with full reorthogonalization and
/// per-iteration re-projection against the deflation basis; convergence is
/// certified with an explicitly computed residual ||A v - theta v||.
///
/// Throws ConvergenceError (carrying the best estimate and its residual)
/// when the iteration budget is exhausted.
inline LanczosResult smallest_eigenvalue_deflated(
    const LinearOp& op, std::int64_t dim,
    const std::vector<ComplexVector>& deflation,
    const LanczosOptions& options = {}) {
  if (dim < 1) throw std::invalid_argument("lanczos: dim must be >= 1");
  for (const auto& b : deflation)
    if (b.size() != dim)
      throw std::invalid_argument("lanczos: deflation vector has wrong dimension");
  // Orthonormality is a precondition (within 1e-10); a skewed basis would
  // silently bias the restricted eigenvalue.
  for (std::size_t i = 0; i < deflation.size(); ++i)
    for (std::size_t j = i; j < deflation.size(); ++j) {
      const Complex g = deflation[i].dot(deflation[j]);
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(g - target) > 1e-10)
        throw std::invalid_argument("lanczos: deflation basis is not orthonormal");
    }
  if (static_cast<std::int64_t>(deflation.size()) >= dim)
    throw std::invalid_argument("lanczos: deflation spans the whole space");

  const std::int64_t max_iter =
      options.max_iterations > 0
          ? options.max_iterations
          : std::max<std::int64_t>(
                200, 10 * static_cast<std::int64_t>(std::sqrt((double)dim)));
  const int cycle =
      options.cycle_length > 0
          ? options.cycle_length
          : static_cast<int>(std::min<std::int64_t>(
                detail::auto_cycle_length(dim), dim));

  RngStream rng(options.seed, 0);
  ComplexVector start(dim);
  for (std::int64_t i = 0; i < dim; ++i) start[i] = rng.complex_normal();
  detail::project_out(deflation, start);
  double nrm = start.norm();
  for (std::uint64_t attempt = 1; nrm < 1e-8 && attempt < 8; ++attempt) {
    RngStream retry(options.seed, attempt);
    for (std::int64_t i = 0; i < dim; ++i) start[i] = retry.complex_normal();
    detail::project_out(deflation, start);
    nrm = start.norm();
  }
  start /= nrm;

  std::vector<ComplexVector> basis;
  std::vector<double> alpha, beta;
  ComplexVector w(dim);
  ComplexVector check_buf(dim);  // keeps verification matvecs off `w`
  std::int64_t total_iterations = 0;
  double best_value = 0.0, best_residual = std::numeric_limits<double>::max();
  bool have_best = false;

  auto ritz_vector = [&](const RealMatrix& s, int col) {
    ComplexVector v = ComplexVector::Zero(dim);
    for (std::size_t i = 0; i < basis.size(); ++i) v += s(i, col) * basis[i];
    return v;
  };

  while (total_iterations < max_iter) {
    basis.clear();
    alpha.clear();
    beta.clear();
    basis.push_back(start);
    bool exhausted = false;

    for (int j = 0; j < cycle && total_iterations < max_iter; ++j) {
      op(basis[j], w);
      ++total_iterations;
      const double a = std::real(basis[j].dot(w));
      alpha.push_back(a);
      w -= a * basis[j];
      if (j > 0) w -= beta[j - 1] * basis[j - 1];
      // Full reorthogonalization (two passes) plus deflation re-projection.
      detail::project_out(deflation, w);
      detail::project_out(basis, w);
      detail::project_out(basis, w);
      const double b = w.norm();

      const int m = j + 1;
      const bool check = b < 1e-12 || m < 48 || (m & 3) == 0 || j == cycle - 1;
      if (check) {
        const auto tri = detail::solve_tridiagonal(alpha, beta, m);
        const double theta = tri.values[0];
        const double scale =
            std::max(std::abs(tri.values[0]), std::abs(tri.values[m - 1]));
        const double est = b * std::abs(tri.vectors(m - 1, 0));
        if (est <= options.tol * std::max(scale, 1e-30) || b < 1e-12) {
          ComplexVector v = ritz_vector(tri.vectors, 0);
          v /= v.norm();
          op(v, check_buf);
          ++total_iterations;
          const double refined = std::real(v.dot(check_buf));
          const double resid = (check_buf - refined * v).norm();
          if (resid < best_residual) {
            best_residual = resid;
            best_value = refined;
            have_best = true;
          }
          if (resid <= 10 * options.tol * std::max(scale, 1e-30) ||
              b < 1e-12) {
            return {refined, resid, total_iterations, std::move(v)};
          }
        }
      }
      if (b < 1e-12) {  // invariant subspace exhausted
        exhausted = true;
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    // Restart from the best Ritz vector of this cycle.
    const int m = static_cast<int>(alpha.size());
    const auto tri = detail::solve_tridiagonal(alpha, beta, m);
    start = ritz_vector(tri.vectors, 0);
    detail::project_out(deflation, start);
    const double rn = start.norm();
    if (rn < 1e-14 || exhausted) {
      // Nothing left to iterate on; report the best certified value.
      if (have_best)
        return {best_value, best_residual, total_iterations, std::move(start)};
      break;
    }
    start /= rn;
  }

  throw ConvergenceError(
      "lanczos: no convergence after " + std::to_string(total_iterations) +
          " iterations (best estimate " + std::to_string(best_value) +
          ", residual " + std::to_string(best_residual) + ")",
      best_value, best_residual);
}

struct SpectrumEdges {
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Extreme eigenvalues of a Hermitian operator (no deflation), for operator
/// norms of explicit differences. Converges both ends of the Ritz spectrum.
inline SpectrumEdges extreme_eigenvalues(const LinearOp& op, std::int64_t dim,
                                         double tol = 1e-10,
                                         std::uint64_t seed = 0x7e11) {
  if (dim < 1) throw std::invalid_argument("extreme_eigenvalues: dim >= 1");
  RngStream rng(seed, 0);
  ComplexVector v0(dim);
  for (std::int64_t i = 0; i < dim; ++i) v0[i] = rng.complex_normal();
  v0 /= v0.norm();

  std::vector<ComplexVector> basis{v0};
  std::vector<double> alpha, beta;
  ComplexVector w(dim);
  const int max_steps = static_cast<int>(
      std::min<std::int64_t>(dim, std::max<std::int64_t>(400, 64)));
  for (int j = 0; j < max_steps; ++j) {
    op(basis[j], w);
    const double a = std::real(basis[j].dot(w));
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    detail::project_out(basis, w);
    detail::project_out(basis, w);
    const double b = w.norm();
    const int m = j + 1;
    const auto tri = detail::solve_tridiagonal(alpha, beta, m);
    const double res_lo = b * std::abs(tri.vectors(m - 1, 0));
    const double res_hi = b * std::abs(tri.vectors(m - 1, m - 1));
    const double scale =
        std::max(std::abs(tri.values[0]), std::abs(tri.values[m - 1]));
    if (b < 1e-13 ||
        (res_lo <= tol * std::max(scale, 1e-30) &&
         res_hi <= tol * std::max(scale, 1e-30))) {
      return {tri.values[0], tri.values[m - 1]};
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  const auto tri =
      detail::solve_tridiagonal(alpha, beta, static_cast<int>(alpha.size()));
  return {tri.values[0], tri.values[tri.values.size() - 1]};
}

/// Operator norm (largest |eigenvalue|) of an explicitly stored Hermitian
/// matrix. Dense eigensolve up to moderate sizes, Lanczos edges above.
inline double operator_norm_hermitian(const ComplexMatrix& m,
                                      double tol = 1e-11) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("operator_norm_hermitian: matrix not square");
  if (m.rows() <= 1024) {
    const RealVector ev = hermitian_eigenvalues(m);
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  }
  const auto edges = extreme_eigenvalues(
      [&](const ComplexVector& in, ComplexVector& out) {
        out.noalias() = m.selfadjointView<Eigen::Lower>() * in;
      },
      m.rows(), tol);
  return std::max(std::abs(edges.min_value), std::abs(edges.max_value));
}

}  // namespace qdesign
