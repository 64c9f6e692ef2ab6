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

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "qdesign/errors.hpp"

#ifdef QDESIGN_USE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace qdesign {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;  // column-major storage
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Hard cap on dense matrix side length. Anything at or below this may be
/// materialized; it doubles as the "cheap ground truth" threshold for tests.
inline constexpr Index kDenseCap = 4096;

/// Integer power with overflow check; the capacity error names the limit.
inline std::int64_t checked_ipow(std::int64_t base, int exp,
                                 std::int64_t cap =
                                     std::numeric_limits<std::int64_t>::max()) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) {
      throw CapacityError("integer overflow computing " + std::to_string(base) +
                          "^" + std::to_string(exp) + " (cap " +
                          std::to_string(cap) + ")");
    }
    r *= base;
  }
  return r;
}

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

/// Kronecker product, written out so the index convention is pinned here:
/// (a ⊗ b)[i_a*rows_b + i_b, j_a*cols_b + j_b] = a(i_a,j_a) * b(i_b,j_b).
/// The left factor is the more significant index, matching the site-major
/// layout of BigVector (site 1 most significant).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (a.rows() > 0 && b.rows() > 0 &&
      (rows / b.rows() != a.rows() || cols / b.cols() != a.cols() ||
       rows > (1LL << 30) || cols > (1LL << 30))) {
    throw CapacityError("kron: result of size " + std::to_string(a.rows()) +
                        "*" + std::to_string(b.rows()) + " x " +
                        std::to_string(a.cols()) + "*" +
                        std::to_string(b.cols()) + " exceeds capacity");
  }
  ComplexMatrix out(rows, cols);
  for (Index ja = 0; ja < a.cols(); ++ja)
    for (Index ia = 0; ia < a.rows(); ++ia)
      out.block(ia * b.rows(), ja * b.cols(), b.rows(), b.cols()) =
          a(ia, ja) * b;
  return out;
}

/// n-fold Kronecker power.
inline ComplexMatrix kron_power(const ComplexMatrix& a, int n) {
  if (n < 1) throw std::invalid_argument("kron_power: n must be >= 1");
  ComplexMatrix out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, same order
};

/// Full eigendecomposition of a Hermitian matrix (eigenvalues ascending).
/// Uses LAPACKE zheevd when available (OpenBLAS-backed and much faster at
/// dim ~4096), otherwise Eigen's SelfAdjointEigenSolver.
inline HermitianEigen hermitian_eigendecomposition(ComplexMatrix a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eigendecomposition: matrix not square");
#ifdef QDESIGN_USE_LAPACKE
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(a.rows());
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("LAPACKE_zheevd failed with info=" +
                             std::to_string(info));
  return {std::move(w), std::move(a)};
#else
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("SelfAdjointEigenSolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
#endif
}

/// Eigenvalues only (ascending).
inline RealVector hermitian_eigenvalues(ComplexMatrix a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
#ifdef QDESIGN_USE_LAPACKE
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(a.rows());
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("LAPACKE_zheevd failed with info=" +
                             std::to_string(info));
  return w;
#else
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("SelfAdjointEigenSolver failed");
  return es.eigenvalues();
#endif
}

/// Lowest `count` eigenpairs of a Hermitian matrix (ascending). Backed by
/// the selective LAPACKE zheevr driver, which at dim 4096 is several times
/// cheaper than a full zheevd with vectors; falls back to a full Eigen
/// solve when LAPACKE is unavailable.
inline HermitianEigen hermitian_smallest_eigenpairs(ComplexMatrix a,
                                                    Index count) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_smallest_eigenpairs: matrix not square");
  if (count < 1 || count > a.rows())
    throw std::invalid_argument("hermitian_smallest_eigenpairs: bad count");
#ifdef QDESIGN_USE_LAPACKE
  const lapack_int n = static_cast<lapack_int>(a.rows());
  const lapack_int iu = static_cast<lapack_int>(count);
  RealVector w(a.rows());
  ComplexMatrix z(a.rows(), count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, iu, 0.0,
      &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0 || found != iu)
    throw std::runtime_error("LAPACKE_zheevr failed (info=" +
                             std::to_string(info) + ", found=" +
                             std::to_string(found) + ")");
  return {w.head(count), std::move(z)};
#else
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("SelfAdjointEigenSolver failed");
  return {es.eigenvalues().head(count), es.eigenvectors().leftCols(count)};
#endif
}

/// Symmetric eigendecomposition for small real matrices (Gram matrices).
struct SymmetricEigen {
  RealVector values;
  RealMatrix vectors;
};

inline SymmetricEigen symmetric_eigendecomposition(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double max_abs(const ComplexMatrix& m) {
  return m.cwiseAbs().maxCoeff();
}

/// max |U†U − I|, the unitarity defect used across the tests.
inline double unitarity_defect(const ComplexMatrix& u) {
  ComplexMatrix d = u.adjoint() * u;
  d -= ComplexMatrix::Identity(u.cols(), u.cols());
  return max_abs(d);
}

}  // namespace qdesign
