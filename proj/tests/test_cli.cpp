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

#include <filesystem>

#include <catch2/catch_amalgamated.hpp>

#include "qdesign/cli.hpp"
#include "helpers.hpp"

using namespace qdesign;

namespace {

json mask_timings(json j) {
  j.erase("wall_time");
  return j;
}

}  // namespace

TEST_CASE("gap command writes the documented JSON", "[cli]") {
  const std::string dir = test::scratch_dir("cli_gap");
  const std::string out = dir + "/gap.json";
  const int code =
      cli::run({"gap", "--n", "3", "--k", "1", "--out", out, "--seed", "7"});
  REQUIRE(code == 0);
  const json j = json::parse(read_text_file(out));
  REQUIRE(j.at("n") == 3);
  REQUIRE(j.at("k") == 1);
  REQUIRE(j.contains("delta_gap"));
  REQUIRE(j.contains("delta_walk"));
  REQUIRE(j.contains("residual"));
  REQUIRE(j.at("seed") == 7);
  REQUIRE(std::filesystem::exists(out + ".run.json"));
  const json rec = json::parse(read_text_file(out + ".run.json"));
  REQUIRE(rec.at("command") == "gap");
  REQUIRE(rec.at("config").at("seed") == 7);
}

TEST_CASE("missing required flag is a usage error (exit 2)", "[cli]") {
  const std::string dir = test::scratch_dir("cli_usage");
  REQUIRE(cli::run({"gap", "--n", "3", "--out", dir + "/x.json"}) == 2);
  REQUIRE(cli::run({"definitely-not-a-command"}) == 2);
  REQUIRE(cli::run({}) == 2);
  REQUIRE(cli::run({"gap", "--n", "3", "--k", "1", "--out", dir + "/x.weird"}) ==
          2);  // format not inferable
}

TEST_CASE("capacity problems exit 1", "[cli]") {
  const std::string dir = test::scratch_dir("cli_cap");
  REQUIRE(cli::run({"gap", "--n", "12", "--k", "2", "--out",
                    dir + "/gap.json"}) == 1);
}

TEST_CASE("same seed reproduces data files byte-identically", "[cli]") {
  const std::string dir = test::scratch_dir("cli_repro");
  const std::string a = dir + "/a.csv", b = dir + "/b.csv";
  REQUIRE(cli::run({"frame-potential", "--n", "2", "--k", "1", "--t", "8",
                    "--samples", "200", "--seed", "99", "--out", a}) == 0);
  REQUIRE(cli::run({"frame-potential", "--n", "2", "--k", "1", "--t", "8",
                    "--samples", "200", "--seed", "99", "--out", b}) == 0);
  REQUIRE(read_text_file(a) == read_text_file(b));
}

TEST_CASE("gap CSV and JSON agree modulo timing fields", "[cli]") {
  const std::string dir = test::scratch_dir("cli_gapfmt");
  const std::string a = dir + "/a.json", b = dir + "/b.json";
  REQUIRE(cli::run({"gap", "--n", "3", "--k", "2", "--seed", "5", "--out", a}) ==
          0);
  REQUIRE(cli::run({"gap", "--n", "3", "--k", "2", "--seed", "5", "--out", b}) ==
          0);
  const json ja = json::parse(read_text_file(a));
  const json jb = json::parse(read_text_file(b));
  REQUIRE(mask_timings(ja) == mask_timings(jb));
}

TEST_CASE("sample-circuit emits a loadable circuit", "[cli]") {
  const std::string dir = test::scratch_dir("cli_circ");
  const std::string out = dir + "/circ.json";
  REQUIRE(cli::run({"sample-circuit", "--n", "4", "--t", "9", "--topology",
                    "all-pairs", "--seed", "3", "--out", out}) == 0);
  const CircuitFile f = circuit_from_json(json::parse(read_text_file(out)));
  REQUIRE(f.circuit.n_qubits == 4);
  REQUIRE(f.circuit.gates.size() == 9);
  REQUIRE(f.seed == 3);
}

TEST_CASE("equilibrate writes sample CSV plus summary JSON", "[cli]") {
  const std::string dir = test::scratch_dir("cli_eq");
  const std::string out = dir + "/eq.csv";
  REQUIRE(cli::run({"equilibrate", "--n", "4", "--t-list", "0,6", "--trials",
                    "5", "--complexity", "4", "--seed", "11", "--out", out}) ==
          0);
  const std::string csv = read_text_file(out);
  REQUIRE(csv.substr(0, csv.find('\n')) == "t,trial,deviation,trace_term,seed");
  const json summary = json::parse(read_text_file(out + ".summary.json"));
  REQUIRE(summary.at("per_depth").size() == 2);
  REQUIRE(summary.contains("baseline_median"));
}

TEST_CASE("depth command reports the rounded-up design depth", "[cli]") {
  const std::string dir = test::scratch_dir("cli_depth");
  const std::string out = dir + "/depth.json";
  REQUIRE(cli::run({"depth", "--n", "3", "--k", "1", "--eps", "0.01", "--seed",
                    "4", "--out", out}) == 0);
  const json j = json::parse(read_text_file(out));
  REQUIRE(j.at("t") == 10);  // delta = 1/2: ceil(2 ln 100)
}

TEST_CASE("scaling CSV uses the GapReport schema", "[cli]") {
  const std::string dir = test::scratch_dir("cli_scaling");
  const std::string out = dir + "/scaling.csv";
  REQUIRE(cli::run({"scaling", "--k", "1", "--n-min", "3", "--n-max", "5",
                    "--seed", "2", "--out", out}) == 0);
  const std::string csv = read_text_file(out);
  REQUIRE(csv.substr(0, csv.find('\n')) ==
          "n,k,delta_gap,delta_walk,solver,residual,seed,wall_time");
  int rows = -1;  // header
  for (const char c : csv)
    if (c == '\n') ++rows;
  REQUIRE(rows == 3);
}

TEST_CASE("nachtergaele command emits per-n rows", "[cli]") {
  const std::string dir = test::scratch_dir("cli_nac");
  const std::string out = dir + "/nac.json";
  REQUIRE(cli::run({"nachtergaele", "--k", "1", "--m", "3", "--n-list", "4,5",
                    "--seed", "6", "--out", out}) == 0);
  const json j = json::parse(read_text_file(out));
  REQUIRE(j.at("rows").size() == 2);
  REQUIRE(j.at("all_hold") == true);
}
