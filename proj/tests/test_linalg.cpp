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

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qdesign;

TEST_CASE("kron of identities is the identity", "[kron]") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  REQUIRE((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("kron of diagonals", "[kron]") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1;
  a(1, 1) = 2;
  b(0, 0) = 3;
  b(1, 1) = 4;
  const ComplexMatrix k = kron(a, b);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = 3;
  expect(1, 1) = 4;
  expect(2, 2) = 6;
  expect(3, 3) = 8;
  REQUIRE((k - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("mixed-product identity (A(x)B)(C(x)D) = AC (x) BD", "[kron]") {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = ginibre(2, rng), b = ginibre(2, rng);
    const ComplexMatrix c = ginibre(2, rng), d = ginibre(2, rng);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron((a * c).eval(), (b * d).eval());
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("kron refuses results beyond the capacity cap", "[kron]") {
  const ComplexMatrix wide = ComplexMatrix::Ones(1, 1 << 16);
  REQUIRE_THROWS_AS(kron(wide, wide), CapacityError);  // 2^32 columns
}

TEST_CASE("apply_local with the identity leaves the state alone",
          "[apply_local]") {
  RngStream rng(12, 0);
  BigVector v = BigVector::random_state(3, 2, rng);
  const BigVector w = apply_local(ComplexMatrix::Identity(4, 4), 2, v);
  REQUIRE((w.amps - v.amps).norm() <= 1e-14);
}

// The kernel against the dense kron-built operator, over every site of
// n_sites in {2,3} and local_dim in {2,4}.
TEST_CASE("apply_local agrees with the dense Kronecker oracle",
          "[apply_local]") {
  RngStream rng(13, 0);
  for (const int n : {2, 3}) {
    for (const std::int64_t d : {std::int64_t{2}, std::int64_t{4}}) {
      for (int site = 1; site <= n - 1; ++site) {
        const ComplexMatrix op = ginibre(d * d, rng);
        BigVector v = BigVector::random_state(n, d, rng);
        std::int64_t left = 1;
        for (int s = 1; s < site; ++s) left *= d;
        const std::int64_t right =
            v.dimension() / (left * d * d);
        ComplexMatrix dense = kron(ComplexMatrix::Identity(left, left), op);
        dense = kron(dense, ComplexMatrix::Identity(right, right));
        const ComplexVector expect = dense * v.amps;
        const BigVector got = apply_local(op, site, v);
        REQUIRE((got.amps - expect).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("unitary pair operators preserve the norm", "[apply_local]") {
  RngStream rng(14, 0);
  const ComplexMatrix u = haar_unitary(16, rng);
  BigVector v = BigVector::random_state(3, 4, rng);
  const BigVector w = apply_local(u, 1, v);
  REQUIRE(std::abs(w.norm() - v.norm()) <= 1e-12);
}

TEST_CASE("apply_local validates shapes", "[apply_local]") {
  RngStream rng(15, 0);
  BigVector v = BigVector::random_state(3, 2, rng);
  REQUIRE_THROWS_AS(apply_local(ComplexMatrix::Identity(3, 3), 1, v),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(apply_local(ComplexMatrix::Identity(4, 4), 0, v),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(apply_local(ComplexMatrix::Identity(4, 4), 3, v),
                    std::invalid_argument);
}

TEST_CASE("two-qubit kernel matches apply_local on adjacent pairs",
          "[apply_two_qubit]") {
  RngStream rng(16, 0);
  const ComplexMatrix u = haar_unitary(4, rng);
  BigVector v = BigVector::random_state(4, 2, rng);
  for (int site = 1; site <= 3; ++site) {
    BigVector inplace = v;
    apply_two_qubit_inplace(u, site, site + 1, inplace);
    const BigVector viaLocal = apply_local(u, site, v);
    REQUIRE((inplace.amps - viaLocal.amps).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("two-qubit kernel handles non-adjacent pairs", "[apply_two_qubit]") {
  RngStream rng(17, 0);
  const ComplexMatrix u = haar_unitary(4, rng);
  BigVector v = BigVector::random_state(3, 2, rng);
  BigVector got = v;
  apply_two_qubit_inplace(u, 1, 3, got);
  const ComplexMatrix dense = embedded_gate_unitary(3, PlacedGate{1, 3, u});
  const ComplexVector expect = dense * v.amps;
  REQUIRE((got.amps - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("BigVector validates its shape", "[big_vector]") {
  REQUIRE_THROWS_AS(BigVector(2, 2, ComplexVector::Zero(3)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(BigVector::basis_state(2, 2, 4), std::invalid_argument);
}

TEST_CASE("hermitian eigendecomposition is an actual decomposition",
          "[eig]") {
  RngStream rng(18, 0);
  const ComplexMatrix a = test::random_hermitian_psd(24, rng);
  const auto eig = hermitian_eigendecomposition(a);
  const ComplexMatrix recon = eig.vectors *
                              eig.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                              eig.vectors.adjoint();
  REQUIRE((recon - a).cwiseAbs().maxCoeff() <= 1e-11);
  for (Index i = 1; i < eig.values.size(); ++i)
    REQUIRE(eig.values[i] >= eig.values[i - 1]);
}
