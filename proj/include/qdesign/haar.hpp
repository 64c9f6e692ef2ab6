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

#include <stdexcept>

#include "qdesign/matrix.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

/// dim x dim matrix of iid standard complex Gaussians (Ginibre ensemble).
inline ComplexMatrix ginibre(Index dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("ginibre: dim must be >= 1");
  ComplexMatrix a(dim, dim);
  // Column-major fill order so the draw sequence is part of the contract.
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) a(i, j) = rng.complex_normal();
  return a;
}

/// Haar-distributed unitary via Ginibre + QR. The raw Householder Q is not
/// Haar; each column is rescaled by the phase of the corresponding diagonal
/// entry of R, which fixes the triangular factor to a positive real
/// diagonal and makes the distribution exactly invariant.
inline ComplexMatrix haar_unitary(Index dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  const ComplexMatrix a = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& packed = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const Complex r = packed(j, j);
    const double mag = std::abs(r);
    const Complex phase = mag > 0.0 ? r / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace qdesign
