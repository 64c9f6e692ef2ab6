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

#include <cstdlib>

#include <catch2/catch_amalgamated.hpp>

#include "qdesign/io.hpp"
#include "helpers.hpp"

using namespace qdesign;

TEST_CASE("17-digit float rendering round-trips bit exactly", "[io]") {
  REQUIRE(format_double(1.0 / 3.0) == "0.33333333333333331");
  RngStream rng(91, 0);
  for (int i = 0; i < 1000; ++i) {
    double v = (rng.uniform() - 0.5) * std::pow(10.0, (double)rng.uniform_int(40) - 20.0);
    if (i % 7 == 0) v = -v;
    const std::string s = format_double(v);
    REQUIRE(s.find(',') == std::string::npos);
    const double back = std::strtod(s.c_str(), nullptr);
    REQUIRE(back == v);
  }
}

TEST_CASE("gap report CSV has the 8 documented columns", "[io]") {
  GapReport r;
  r.n = 3;
  r.k = 1;
  r.gap = 1.0;
  r.delta_walk = 0.5;
  r.solver = "dense";
  r.residual = 1e-14;
  r.seed = 42;
  r.wall_time_s = 0.1;
  const std::string csv = gap_report_csv(r);
  REQUIRE(csv.substr(0, csv.find('\n')) ==
          "n,k,delta_gap,delta_walk,solver,residual,seed,wall_time");
  const std::string row = csv.substr(csv.find('\n') + 1);
  int commas = 0;
  for (const char c : row)
    if (c == ',') ++commas;
  REQUIRE(commas == 7);
  REQUIRE(row.find("3,1,1,0.5,dense,") == 0);
}

TEST_CASE("gap report JSON carries the contract fields", "[io]") {
  GapReport r;
  r.n = 3;
  r.k = 1;
  r.gap = 1.0;
  r.delta_walk = 0.5;
  r.solver = "iterative";
  r.seed = 7;
  const json j = gap_report_json(r);
  REQUIRE(j.at("n") == 3);
  REQUIRE(j.at("k") == 1);
  REQUIRE(j.contains("delta_gap"));
  REQUIRE(j.contains("delta_walk"));
  REQUIRE(j.contains("residual"));
  REQUIRE(j.at("seed") == 7);
}

TEST_CASE("empty result set produces a header-only CSV", "[io]") {
  DesignErrorTable t;
  t.n = 3;
  t.k = 1;
  const std::string csv = design_error_csv(t);
  REQUIRE(csv == "n,k,t,error,predicted,delta_walk,seed\n");
}

TEST_CASE("JSON doubles survive a round trip losslessly", "[io]") {
  RngStream rng(92, 0);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.normal() * std::pow(10.0, (double)rng.uniform_int(30) - 15.0);
    const json j = json{{"v", v}};
    const double back = json::parse(j.dump()).at("v").get<double>();
    REQUIRE(back == v);
  }
}

TEST_CASE("text files write and read back", "[io]") {
  const std::string dir = test::scratch_dir("io");
  const std::string path = dir + "/x.txt";
  write_text_file(path, "hello\n");
  REQUIRE(read_text_file(path) == "hello\n");
  REQUIRE_THROWS_AS(write_text_file(dir + "/no/such/dir/x.txt", "y"),
                    std::runtime_error);
}
