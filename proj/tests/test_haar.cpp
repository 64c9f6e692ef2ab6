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

TEST_CASE("haar_unitary is unitary for dims 1..16", "[haar]") {
  RngStream rng(1, 0);
  for (Index dim = 1; dim <= 16; ++dim) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    REQUIRE(unitarity_defect(u) <= 1e-12);
  }
}

TEST_CASE("dim 1 is a pure phase", "[haar]") {
  RngStream rng(2, 0);
  for (int i = 0; i < 32; ++i) {
    const ComplexMatrix u = haar_unitary(1, rng);
    REQUIRE(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("dim 0 is rejected", "[haar]") {
  RngStream rng(3, 0);
  REQUIRE_THROWS_AS(haar_unitary(0, rng), std::invalid_argument);
}

// |U_11|^2 of a Haar 2x2 unitary is uniform on [0,1] (Beta(1, d-1) with
// d = 2): the closed-form marginal is the oracle for the sampler.
TEST_CASE("2x2 Haar marginal |U11|^2 passes a KS test against uniform",
          "[haar][mc]") {
  RngStream rng(4, 0);
  const int n = 100000;
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix u = haar_unitary(2, rng);
    samples[i] = std::norm(u(0, 0));
  }
  REQUIRE(test::ks_distance_uniform(std::move(samples)) <= 0.01);
}

// Left invariance: E[tr(A U)] = 0 for any fixed A; the sample mean of
// tr(A U) has modulus O(sqrt(dim)/sqrt(N)).
TEST_CASE("sample mean of tr(A U) vanishes (left invariance)", "[haar][mc]") {
  const Index dim = 4;
  RngStream arng(100, 0);
  const ComplexMatrix a = haar_unitary(dim, arng);  // fixed unitary A
  RngStream rng(5, 0);
  const int n = 10000;
  std::vector<Complex> traces(n);
  for (int i = 0; i < n; ++i)
    traces[i] = (a * haar_unitary(dim, rng)).trace();
  const Complex mean = pairwise_sum<Complex>(traces) / static_cast<double>(n);
  REQUIRE(std::abs(mean) <= 5.0 / std::sqrt(n) * std::sqrt((double)dim));
}

TEST_CASE("draws are deterministic given the stream", "[haar]") {
  RngStream a(6, 1), b(6, 1);
  const ComplexMatrix ua = haar_unitary(8, a);
  const ComplexMatrix ub = haar_unitary(8, b);
  REQUIRE((ua - ub).cwiseAbs().maxCoeff() == 0.0);
}
