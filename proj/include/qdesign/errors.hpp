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
#include <string>

namespace qdesign {

/// A requested object exceeds the dense/state-size budget. The message names
/// the limiting dimension and, where meaningful, the largest feasible
/// parameter, since (4^k)^n walls are non-obvious.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative eigensolver ran out of iterations. Carries the best estimate
/// and its residual so callers can decide whether the partial answer is
/// usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double residual)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        residual_(residual) {}

  double best_estimate() const { return best_estimate_; }
  double residual() const { return residual_; }

 private:
  double best_estimate_;
  double residual_;
};

/// The permutation-vector Gram matrix is numerically singular (2^n < k
/// regime). The fix is pseudoinverse mode, which the message suggests.
class DegenerateGramError : public std::runtime_error {
 public:
  explicit DegenerateGramError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace qdesign
