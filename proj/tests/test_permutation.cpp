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

#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qdesign;

namespace {

// Independent cycle counter: build sigma^{-1} tau by searching positions in
// sigma, then peel orbits off a set. Deliberately different mechanics from
// the library's visited-array walk.
int oracle_cycle_count(const Permutation& sigma, const Permutation& tau) {
  const int k = static_cast<int>(sigma.size());
  std::vector<int> f(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      if (sigma[j] == tau[i]) {
        f[i] = j;
        break;
      }
  }
  std::set<int> remaining;
  for (int i = 0; i < k; ++i) remaining.insert(i);
  int cycles = 0;
  while (!remaining.empty()) {
    ++cycles;
    int start = *remaining.begin();
    int cur = start;
    do {
      remaining.erase(cur);
      cur = f[cur];
    } while (cur != start);
  }
  return cycles;
}

}  // namespace

TEST_CASE("lexicographic enumeration order is pinned", "[perm]") {
  const auto perms = all_permutations(3);
  REQUIRE(perms.size() == 6);
  REQUIRE(perms[0] == Permutation{0, 1, 2});
  REQUIRE(perms[1] == Permutation{0, 2, 1});
  REQUIRE(perms[2] == Permutation{1, 0, 2});
  REQUIRE(perms[3] == Permutation{1, 2, 0});
  REQUIRE(perms[4] == Permutation{2, 0, 1});
  REQUIRE(perms[5] == Permutation{2, 1, 0});
}

TEST_CASE("cycle count of sigma against itself is k", "[perm]") {
  for (int k = 1; k <= 5; ++k) {
    const auto perms = all_permutations(k);
    for (const auto& p : perms) REQUIRE(cycle_count(p, p) == k);
  }
}

TEST_CASE("identity vs swap has one cycle", "[perm]") {
  REQUIRE(cycle_count(Permutation{0, 1}, Permutation{1, 0}) == 1);
}

TEST_CASE("matches a brute-force cycle decomposition at k = 4", "[perm]") {
  const auto perms = all_permutations(4);
  RngStream rng(31, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto& s = perms[rng.uniform_int(perms.size())];
    const auto& t = perms[rng.uniform_int(perms.size())];
    REQUIRE(cycle_count(s, t) == oracle_cycle_count(s, t));
  }
}

TEST_CASE("size mismatch is rejected", "[perm]") {
  REQUIRE_THROWS_AS(cycle_count(Permutation{0, 1}, Permutation{0, 1, 2}),
                    std::invalid_argument);
}

TEST_CASE("compose and inverse are consistent", "[perm]") {
  const auto perms = all_permutations(4);
  RngStream rng(32, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto& s = perms[rng.uniform_int(perms.size())];
    REQUIRE(compose(s, inverse_permutation(s)) == identity_permutation(4));
    REQUIRE(compose(inverse_permutation(s), s) == identity_permutation(4));
  }
}

TEST_CASE("factorial guard", "[perm]") {
  REQUIRE(factorial(5) == 120);
  REQUIRE_THROWS_AS(factorial(21), std::invalid_argument);
}
