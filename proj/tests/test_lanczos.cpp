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

namespace {

LinearOp dense_op(const ComplexMatrix& m) {
  return [&m](const ComplexVector& in, ComplexVector& out) {
    out.noalias() = m * in;
  };
}

}  // namespace

TEST_CASE("deflated smallest eigenvalue on a diagonal matrix", "[lanczos]") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(2, 2) = 0.5;
  m(3, 3) = 1.0;
  std::vector<ComplexVector> deflation{ComplexVector::Unit(4, 0),
                                       ComplexVector::Unit(4, 1)};
  const auto res = smallest_eigenvalue_deflated(dense_op(m), 4, deflation);
  REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(0.5, 1e-10));
  REQUIRE(res.residual <= 1e-9);
}

TEST_CASE("matches the dense eigensolver on a random 100x100 PSD matrix",
          "[lanczos]") {
  RngStream rng(21, 0);
  const ComplexMatrix m = test::random_hermitian_psd(100, rng);
  const RealVector dense = hermitian_eigenvalues(m);
  const auto res = smallest_eigenvalue_deflated(dense_op(m), 100, {});
  REQUIRE_THAT(res.value, Catch::Matchers::WithinAbs(dense[0], 1e-8));
}

TEST_CASE("deterministic given (seed, tol)", "[lanczos]") {
  RngStream rng(22, 0);
  const ComplexMatrix m = test::random_hermitian_psd(64, rng);
  LanczosOptions opt;
  opt.seed = 777;
  const auto a = smallest_eigenvalue_deflated(dense_op(m), 64, {}, opt);
  const auto b = smallest_eigenvalue_deflated(dense_op(m), 64, {}, opt);
  REQUIRE(a.value == b.value);
  REQUIRE(a.residual == b.residual);
  REQUIRE(a.iterations == b.iterations);
}

TEST_CASE("rejects a skewed deflation basis", "[lanczos]") {
  ComplexMatrix m = ComplexMatrix::Identity(8, 8);
  ComplexVector v = ComplexVector::Unit(8, 0) + 0.5 * ComplexVector::Unit(8, 1);
  REQUIRE_THROWS_AS(smallest_eigenvalue_deflated(dense_op(m), 8, {v}),
                    std::invalid_argument);
}

TEST_CASE("iteration starvation raises ConvergenceError with the best estimate",
          "[lanczos]") {
  RngStream rng(23, 0);
  const ComplexMatrix m = test::random_hermitian_psd(200, rng);
  LanczosOptions opt;
  opt.max_iterations = 4;
  opt.tol = 1e-14;
  try {
    smallest_eigenvalue_deflated(dense_op(m), 200, {}, opt);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    REQUIRE(std::isfinite(e.best_estimate()));
    REQUIRE(e.residual() >= 0.0);
  }
}

TEST_CASE("extreme eigenvalues bracket the spectrum", "[lanczos]") {
  RngStream rng(24, 0);
  ComplexMatrix m = test::random_hermitian_psd(80, rng);
  m -= 0.3 * ComplexMatrix::Identity(80, 80);  // make part of it negative
  const RealVector dense = hermitian_eigenvalues(m);
  const auto edges = extreme_eigenvalues(dense_op(m), 80);
  REQUIRE_THAT(edges.min_value, Catch::Matchers::WithinAbs(dense[0], 1e-8));
  REQUIRE_THAT(edges.max_value, Catch::Matchers::WithinAbs(dense[79], 1e-8));
}

TEST_CASE("operator norm of a Hermitian matrix", "[lanczos]") {
  RngStream rng(25, 0);
  ComplexMatrix m = test::random_hermitian_psd(60, rng);
  m -= 0.8 * ComplexMatrix::Identity(60, 60);
  const RealVector dense = hermitian_eigenvalues(m);
  const double expect = std::max(std::abs(dense[0]), std::abs(dense[59]));
  REQUIRE_THAT(operator_norm_hermitian(m),
               Catch::Matchers::WithinAbs(expect, 1e-9));
}
