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

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdesign/circuit.hpp"
#include "qdesign/experiments.hpp"
#include "qdesign/hamiltonian.hpp"
#include "qdesign/io.hpp"
#include "qdesign/version.hpp"

namespace qdesign::cli {

// Exit codes: 0 success, 1 computational failure (capacity, convergence,
// I/O), 2 usage error. Every run derives all randomness from the recorded
// seed; rerunning with the same seed reproduces all emitted numerics
// byte-identically, timing fields (wall_time, timestamps) excepted.

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("malformed integer list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

inline std::string infer_format(const std::string& requested,
                                const std::string& path) {
  if (!requested.empty()) {
    if (requested != "csv" && requested != "json")
      throw std::invalid_argument("--format must be csv or json");
    return requested;
  }
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return "json";
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return "csv";
  throw std::invalid_argument(
      "cannot infer output format from '" + path + "'; pass --format csv|json");
}

inline void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("QDESIGN_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    setenv("OPENBLAS_NUM_THREADS", std::to_string(threads).c_str(), 0);
  }
}

struct Sink {
  std::string command;
  std::string out_path;
  json config;
  std::string started_at = iso8601_utc_now();
  std::vector<std::string> outputs;

  void write(const std::string& path, const std::string& content) {
    write_text_file(path, content);
    outputs.push_back(path);
  }

  void finish() {
    RunRecord rec;
    rec.command = command;
    rec.config = config;
    rec.started_at = started_at;
    rec.finished_at = iso8601_utc_now();
    rec.outputs = outputs;
    write_text_file(out_path + ".run.json", rec.to_json().dump(2) + "\n");
    for (const auto& p : outputs) std::cout << "wrote " << p << "\n";
  }
};

}  // namespace detail

inline int run(const std::vector<std::string>& args) {
  CLI::App app{"random-circuit k-design toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // Shared state filled by whichever subcommand runs.
  int n = 0, k = 1, trials = 0, threads = 0, m_block = 0;
  std::int64_t t = 0, samples = 0, complexity = 20;
  std::int64_t max_dim = kDefaultMaxStateDim;
  double eps = 0, tol = 1e-10, log_base = 2.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path, format_flag, topology_str = "line-nn",
                        solver_str = "auto", t_list_str, n_list_str,
                        targets_str = "1";
  int n_min = 0, n_max = 0;

  auto add_common = [&](CLI::App* sub, bool gap_family) {
    sub->add_option("--seed", seed, "RNG seed (default: drawn from entropy, recorded)")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--out", out_path, "output data file (a .run.json sidecar is written next to it)")
        ->required();
    sub->add_option("--format", format_flag, "csv | json (default: from --out extension)");
    sub->add_option("--threads", threads, "cap internal parallelism");
    if (gap_family) {
      sub->add_option("--tol", tol, "iterative solver tolerance");
      sub->add_option("--solver", solver_str, "auto | dense | iterative");
      sub->add_option("--max-dim", max_dim, "state-dimension budget");
    }
  };

  auto gap_options = [&]() {
    GapOptions o;
    o.solver = gap_solver_from_string(solver_str);
    o.tol = tol;
    o.seed = seed;
    o.max_dim = max_dim;
    return o;
  };

  auto* cmd_gap = app.add_subcommand("gap", "spectral gap of H_{n,k} and delta(n,k)");
  cmd_gap->add_option("--n", n, "qubit count")->required();
  cmd_gap->add_option("--k", k, "moment order")->required();
  add_common(cmd_gap, true);

  auto* cmd_depth = app.add_subcommand("depth", "design depth t = ceil(ln(1/eps)/delta)");
  cmd_depth->add_option("--n", n)->required();
  cmd_depth->add_option("--k", k)->required();
  cmd_depth->add_option("--eps", eps, "target design error in (0,1)")->required();
  add_common(cmd_depth, true);

  auto* cmd_derr = app.add_subcommand("design-error", "exact ||G_nu^t - G_Haar|| vs (1-delta)^t");
  cmd_derr->add_option("--n", n)->required();
  cmd_derr->add_option("--k", k)->required();
  cmd_derr->add_option("--t-list", t_list_str, "comma list of depths")->required();
  add_common(cmd_derr, true);

  auto* cmd_fp = app.add_subcommand("frame-potential", "Monte-Carlo frame potential of a circuit ensemble");
  cmd_fp->add_option("--n", n)->required();
  cmd_fp->add_option("--k", k)->required();
  cmd_fp->add_option("--t", t, "circuit depth")->required();
  cmd_fp->add_option("--samples", samples, "circuit pairs")->required();
  cmd_fp->add_option("--topology", topology_str, "line-nn | all-pairs | brickwork");
  add_common(cmd_fp, false);

  auto* cmd_eq = app.add_subcommand("equilibrate", "deviation-vs-depth data-hiding experiment");
  cmd_eq->add_option("--n", n)->required();
  cmd_eq->add_option("--t-list", t_list_str, "comma list of depths")->required();
  cmd_eq->add_option("--trials", trials, "trials per depth")->required();
  cmd_eq->add_option("--complexity", complexity, "gate count of the measurement circuit V");
  cmd_eq->add_option("--targets", targets_str, "comma list of projector qubits ('' for M = I)");
  cmd_eq->add_option("--topology", topology_str, "evolution circuit topology");
  add_common(cmd_eq, false);

  auto* cmd_nac = app.add_subcommand("nachtergaele", "finite-size gap criterion Delta(H_n) >= Delta(H_m)/(4m)");
  cmd_nac->add_option("--k", k)->required();
  cmd_nac->add_option("--n-list", n_list_str, "comma list of chain lengths")->required();
  cmd_nac->add_option("--m", m_block, "block size (default ceil(2.5 log_base(4k)), reduced if infeasible)");
  cmd_nac->add_option("--log-base", log_base, "base of the log in the default m");
  add_common(cmd_nac, true);

  auto* cmd_sc = app.add_subcommand("scaling", "n * delta(n,k) consistency table");
  cmd_sc->add_option("--k", k)->required();
  cmd_sc->add_option("--n-min", n_min, "first n")->required();
  cmd_sc->add_option("--n-max", n_max, "last n")->required();
  add_common(cmd_sc, true);

  auto* cmd_circ = app.add_subcommand("sample-circuit", "draw a circuit and write it as JSON");
  cmd_circ->add_option("--n", n)->required();
  cmd_circ->add_option("--t", t, "gate count")->required();
  cmd_circ->add_option("--topology", topology_str);
  add_common(cmd_circ, false);

  try {
    // CLI11's vector overload consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    detail::apply_threads(threads);
    if (!seed_given) seed = RngStream::entropy_seed();

    detail::Sink sink;
    sink.out_path = out_path;

    if (*cmd_gap) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      sink.command = "gap";
      sink.config = json{{"n", n}, {"k", k}, {"tol", tol}, {"solver", solver_str},
                         {"seed", seed}, {"max_dim", max_dim}, {"format", fmt}};
      const GapReport r = spectral_gap(n, k, gap_options());
      sink.write(out_path, fmt == "json" ? gap_report_json(r).dump(2) + "\n"
                                         : gap_report_csv(r));
    } else if (*cmd_depth) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      sink.command = "depth";
      sink.config = json{{"n", n}, {"k", k}, {"eps", eps}, {"tol", tol},
                         {"solver", solver_str}, {"seed", seed}, {"format", fmt}};
      const DesignDepth d = design_depth(n, k, eps, gap_options());
      sink.write(out_path, fmt == "json" ? design_depth_json(d).dump(2) + "\n"
                                         : design_depth_csv(d));
    } else if (*cmd_derr) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      const auto t_list = detail::parse_int_list(t_list_str);
      sink.command = "design-error";
      sink.config = json{{"n", n}, {"k", k}, {"t_list", t_list}, {"seed", seed},
                         {"format", fmt}};
      const DesignErrorTable table = design_error(n, k, t_list, gap_options());
      sink.write(out_path, fmt == "json" ? design_error_json(table).dump(2) + "\n"
                                         : design_error_csv(table));
    } else if (*cmd_fp) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      EnsembleSpec spec{n, t, topology_from_string(topology_str), seed};
      sink.command = "frame-potential";
      sink.config = json{{"n", n}, {"k", k}, {"t", t}, {"samples", samples},
                         {"topology", topology_str}, {"seed", seed}, {"format", fmt}};
      const FramePotentialEstimate est = frame_potential(spec, k, samples);
      sink.write(out_path, fmt == "json" ? frame_potential_json(est).dump(2) + "\n"
                                         : frame_potential_csv(est));
    } else if (*cmd_eq) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      const auto t_list = detail::parse_int_list(t_list_str);
      std::vector<int> targets;
      if (!targets_str.empty())
        for (const auto v : detail::parse_int_list(targets_str))
          targets.push_back(static_cast<int>(v));
      MeasurementSpec family;
      family.n = n;
      family.complexity = complexity;
      family.target_qubits = targets;
      family.seed = RngStream(seed, 0x4d4553).next_u64();
      sink.command = "equilibrate";
      sink.config = json{{"n", n}, {"t_list", t_list}, {"trials", trials},
                         {"complexity", complexity}, {"targets", targets},
                         {"topology", topology_str}, {"seed", seed},
                         {"format", fmt}};
      const EquilibrationResult r = equilibration_experiment(
          n, t_list, family, trials, seed, topology_from_string(topology_str));
      if (fmt == "json") {
        json samples_json = json::array();
        for (const auto& s : r.samples)
          samples_json.push_back(json{{"t", s.t}, {"trial", s.trial},
                                      {"deviation", s.deviation},
                                      {"trace_term", s.trace_term},
                                      {"seed", s.seed}});
        json combined = equilibration_summary_json(r);
        combined["samples"] = std::move(samples_json);
        sink.write(out_path, combined.dump(2) + "\n");
      } else {
        sink.write(out_path, equilibration_samples_csv(r));
        sink.write(out_path + ".summary.json",
                   equilibration_summary_json(r).dump(2) + "\n");
      }
    } else if (*cmd_nac) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      std::vector<int> n_list;
      for (const auto v : detail::parse_int_list(n_list_str))
        n_list.push_back(static_cast<int>(v));
      if (m_block == 0 && log_base != 2.0)
        m_block = nachtergaele_default_m(k, log_base);
      sink.command = "nachtergaele";
      sink.config = json{{"k", k}, {"m", m_block}, {"n_list", n_list},
                         {"log_base", log_base}, {"seed", seed}, {"format", fmt}};
      const NachtergaeleReport r =
          nachtergaele_check(k, m_block, n_list, gap_options());
      if (r.m_reduced)
        std::cerr << "warning: default block size m=" << r.m_default
                  << " infeasible within --max-dim; using m=" << r.m << "\n";
      sink.write(out_path, fmt == "json" ? nachtergaele_json(r).dump(2) + "\n"
                                         : nachtergaele_csv(r));
    } else if (*cmd_sc) {
      const std::string fmt = detail::infer_format(format_flag, out_path);
      if (n_min < 2 || n_max < n_min)
        throw std::invalid_argument("scaling: need 2 <= n-min <= n-max");
      std::vector<int> n_list;
      for (int i = n_min; i <= n_max; ++i) n_list.push_back(i);
      sink.command = "scaling";
      sink.config = json{{"k", k}, {"n_min", n_min}, {"n_max", n_max},
                         {"seed", seed}, {"format", fmt}};
      const ScalingTable table = scaling_check(k, n_list, gap_options());
      sink.write(out_path, fmt == "json" ? scaling_json(table).dump(2) + "\n"
                                         : scaling_csv(table));
    } else if (*cmd_circ) {
      sink.command = "sample-circuit";
      const Topology topo = topology_from_string(topology_str);
      sink.config = json{{"n", n}, {"t", t}, {"topology", topology_str},
                         {"seed", seed}};
      EnsembleSpec spec{n, t, topo, seed};
      const Circuit c = sample_circuit(spec);
      sink.write(out_path, circuit_to_json(c, topo, seed).dump(2) + "\n");
    }

    sink.finish();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace qdesign::cli
