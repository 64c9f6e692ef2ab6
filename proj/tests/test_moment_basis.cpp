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

TEST_CASE("gram matrix k=1 is [[1]]", "[gram]") {
  const RealMatrix w = gram_matrix(1, 4);
  REQUIRE(w.rows() == 1);
  REQUIRE(w(0, 0) == 1.0);
}

TEST_CASE("gram matrix k=2 q=4 is [[1,1/4],[1/4,1]]", "[gram]") {
  const RealMatrix w = gram_matrix(2, 4);
  REQUIRE(w.rows() == 2);
  REQUIRE(w(0, 0) == 1.0);
  REQUIRE(w(1, 1) == 1.0);
  REQUIRE(w(0, 1) == 0.25);  // c(swap) = 1 gives 4^(1-2)
  REQUIRE(w(1, 0) == 0.25);
}

TEST_CASE("gram matrix k=3 q=4 is positive definite", "[gram]") {
  const RealMatrix w = gram_matrix(3, 4);
  const auto eig = symmetric_eigendecomposition(w);
  for (Index i = 0; i < eig.values.size(); ++i)
    REQUIRE(eig.values[i] > 0.0);
}

TEST_CASE("gram matrix is symmetric with an exactly unit diagonal", "[gram]") {
  for (const int k : {2, 3, 4}) {
    for (const std::int64_t q : {std::int64_t{2}, std::int64_t{4},
                                 std::int64_t{8}}) {
      const RealMatrix w = gram_matrix(k, q);
      for (Index i = 0; i < w.rows(); ++i) {
        REQUIRE(w(i, i) == 1.0);
        for (Index j = 0; j < w.cols(); ++j) REQUIRE(w(i, j) == w(j, i));
      }
    }
  }
}

TEST_CASE("permutation vector k=1 q=2 is the normalized Bell pair", "[psi]") {
  const ComplexVector v = permutation_vector(Permutation{0}, 2);
  REQUIRE(v.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE_THAT(v[0].real(), Catch::Matchers::WithinAbs(s, 1e-15));
  REQUIRE(std::abs(v[1]) == 0.0);
  REQUIRE(std::abs(v[2]) == 0.0);
  REQUIRE_THAT(v[3].real(), Catch::Matchers::WithinAbs(s, 1e-15));
}

TEST_CASE("vector overlaps reproduce the Gram formula entrywise", "[psi]") {
  for (const std::int64_t q : {std::int64_t{2}, std::int64_t{4}}) {
    const int k = 3;
    const auto perms = all_permutations(k);
    const RealMatrix w = gram_matrix(k, q);
    for (std::size_t s = 0; s < perms.size(); ++s) {
      const ComplexVector vs = permutation_vector(perms[s], q);
      REQUIRE(std::abs(vs.norm() - 1.0) <= 1e-12);
      for (std::size_t t = 0; t < perms.size(); ++t) {
        const ComplexVector vt = permutation_vector(perms[t], q);
        const Complex overlap = vs.dot(vt);
        REQUIRE(std::abs(overlap - Complex(w(s, t), 0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sparse site basis equals the dense permutation vectors", "[psi]") {
  for (const int k : {1, 2, 3}) {
    const SiteBasis b = make_site_basis(k);
    for (std::size_t s = 0; s < b.perms.size(); ++s) {
      const ComplexVector dense = permutation_vector(b.perms[s], 2);
      ComplexVector sparse = ComplexVector::Zero(b.site_dim);
      for (const std::int64_t idx : b.support[s]) sparse[idx] = b.amplitude;
      REQUIRE((dense - sparse).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }
}

TEST_CASE("gram inversion round-trips when positive definite", "[gram]") {
  const RealMatrix w = gram_matrix(3, 4);
  const GramInverse gi = invert_gram(w);
  REQUIRE_FALSE(gi.pseudo);
  REQUIRE(gi.rank == w.rows());
  REQUIRE((gi.inv * w - RealMatrix::Identity(w.rows(), w.rows()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("degenerate Gram (2^n < k) needs pseudoinverse mode", "[gram]") {
  // k = 3 copies of a q = 2 space: the 6 permutation vectors span less
  // than 6 dimensions.
  const RealMatrix w = gram_matrix(3, 2);
  REQUIRE_THROWS_AS(invert_gram(w, false), DegenerateGramError);
  const GramInverse gi = invert_gram(w, true);
  REQUIRE(gi.pseudo);
  REQUIRE(gi.rank < w.rows());
  // Moore-Penrose identity W W+ W = W.
  REQUIRE((w * gi.inv * w - w).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("inverse square root orthonormalizes the Gram", "[gram]") {
  const RealMatrix w = gram_matrix(3, 8);
  const RealMatrix s = gram_inverse_sqrt(w);
  REQUIRE((s * w * s - RealMatrix::Identity(w.rows(), w.rows()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}
