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

#include <charconv>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdesign/experiments.hpp"
#include "qdesign/hamiltonian.hpp"
#include "qdesign/version.hpp"

namespace qdesign {

/// 17-significant-digit decimal rendering (locale-independent, '.'
/// decimal); parses back to the identical bit pattern.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string iso8601_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// One per run, written alongside the data file: enough to regenerate every
/// number in it.
struct RunRecord {
  std::string command;
  json config;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  json to_json() const {
    return json{{"command", command},        {"config", config},
                {"artifact_version", kVersion}, {"started_at", started_at},
                {"finished_at", finished_at},   {"outputs", outputs}};
  }
};

// --- GapReport ---------------------------------------------------------------

inline const char* kGapCsvHeader =
    "n,k,delta_gap,delta_walk,solver,residual,seed,wall_time\n";

inline std::string gap_report_csv_row(const GapReport& r) {
  return csv_row({std::to_string(r.n), std::to_string(r.k),
                  format_double(r.gap), format_double(r.delta_walk), r.solver,
                  format_double(r.residual), std::to_string(r.seed),
                  format_double(r.wall_time_s)});
}

inline std::string gap_report_csv(const GapReport& r) {
  return kGapCsvHeader + gap_report_csv_row(r);
}

inline json gap_report_json(const GapReport& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"delta_gap", r.gap},
              {"delta_walk", r.delta_walk},
              {"solver", r.solver},
              {"residual", r.residual},
              {"seed", r.seed},
              {"wall_time", r.wall_time_s},
              {"iterations", r.iterations}};
}

// --- DesignDepth ---------------------------------------------------------------

inline std::string design_depth_csv(const DesignDepth& d) {
  std::string out = "n,k,eps,t,delta_gap,delta_walk,solver,residual,seed,wall_time\n";
  out += csv_row({std::to_string(d.n), std::to_string(d.k),
                  format_double(d.eps), std::to_string(d.t),
                  format_double(d.gap.gap), format_double(d.gap.delta_walk),
                  d.gap.solver, format_double(d.gap.residual),
                  std::to_string(d.gap.seed),
                  format_double(d.gap.wall_time_s)});
  return out;
}

inline json design_depth_json(const DesignDepth& d) {
  return json{{"n", d.n},
              {"k", d.k},
              {"eps", d.eps},
              {"t", d.t},
              {"gap", gap_report_json(d.gap)}};
}

// --- DesignErrorTable ----------------------------------------------------------

inline std::string design_error_csv(const DesignErrorTable& t) {
  std::string out = "n,k,t,error,predicted,delta_walk,seed\n";
  for (const auto& row : t.rows)
    out += csv_row({std::to_string(t.n), std::to_string(t.k),
                    std::to_string(row.t), format_double(row.error),
                    format_double(row.predicted), format_double(t.delta_walk),
                    std::to_string(t.seed)});
  return out;
}

inline json design_error_json(const DesignErrorTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back(json{{"t", row.t},
                        {"error", row.error},
                        {"predicted", row.predicted}});
  return json{{"n", t.n},
              {"k", t.k},
              {"delta_walk", t.delta_walk},
              {"seed", t.seed},
              {"rows", std::move(rows)}};
}

// --- FramePotentialEstimate -----------------------------------------------------

inline std::string frame_potential_csv(const FramePotentialEstimate& e) {
  std::string out = "n,k,t,topology,samples,value,std_error,haar_value,seed\n";
  out += csv_row({std::to_string(e.spec.n_qubits), std::to_string(e.k),
                  std::to_string(e.spec.depth), to_string(e.spec.topology),
                  std::to_string(e.samples), format_double(e.value),
                  format_double(e.std_error), format_double(e.haar_value),
                  std::to_string(e.spec.seed)});
  return out;
}

inline json frame_potential_json(const FramePotentialEstimate& e) {
  return json{{"n", e.spec.n_qubits},
              {"k", e.k},
              {"t", e.spec.depth},
              {"topology", to_string(e.spec.topology)},
              {"samples", e.samples},
              {"value", e.value},
              {"std_error", e.std_error},
              {"haar_value", e.haar_value},
              {"seed", e.spec.seed}};
}

// --- Equilibration ---------------------------------------------------------------

inline std::string equilibration_samples_csv(const EquilibrationResult& r) {
  std::string out = "t,trial,deviation,trace_term,seed\n";
  for (const auto& s : r.samples)
    out += csv_row({std::to_string(s.t), std::to_string(s.trial),
                    format_double(s.deviation), format_double(s.trace_term),
                    std::to_string(s.seed)});
  return out;
}

inline json equilibration_summary_json(const EquilibrationResult& r) {
  json per_t = json::array();
  for (const auto& s : r.summary)
    per_t.push_back(json{{"t", s.t},
                         {"median_deviation", s.median_dev},
                         {"p90_deviation", s.p90_dev}});
  return json{{"n", r.n},
              {"measurement_complexity", r.measurement_complexity},
              {"target_qubits", r.target_qubits},
              {"trials", r.trials},
              {"seed", r.seed},
              {"per_depth", std::move(per_t)},
              {"baseline_median", r.baseline_median},
              {"baseline_p90", r.baseline_p90}};
}

// --- Nachtergaele ------------------------------------------------------------------

inline std::string nachtergaele_csv(const NachtergaeleReport& r) {
  std::string out = "k,m,n,lhs_gap,rhs_bound,ratio,holds,seed\n";
  for (const auto& row : r.rows)
    out += csv_row({std::to_string(r.k), std::to_string(r.m),
                    std::to_string(row.n), format_double(row.lhs),
                    format_double(row.rhs), format_double(row.ratio),
                    row.holds ? "1" : "0", std::to_string(r.base.seed)});
  return out;
}

inline json nachtergaele_json(const NachtergaeleReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"n", row.n},
                        {"lhs_gap", row.lhs},
                        {"rhs_bound", row.rhs},
                        {"ratio", row.ratio},
                        {"holds", row.holds}});
  return json{{"k", r.k},
              {"m", r.m},
              {"m_default", r.m_default},
              {"m_reduced", r.m_reduced},
              {"base_gap", gap_report_json(r.base)},
              {"rows", std::move(rows)},
              {"all_hold", r.all_hold}};
}

// --- Scaling --------------------------------------------------------------------

/// CSV uses the GapReport schema, one row per n.
inline std::string scaling_csv(const ScalingTable& t) {
  std::string out = kGapCsvHeader;
  for (const auto& r : t.reports) out += gap_report_csv_row(r);
  return out;
}

inline json scaling_json(const ScalingTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back(json{{"n", row.n},
                        {"delta_walk", row.delta_walk},
                        {"n_delta", row.n_delta}});
  return json{{"k", t.k},
              {"rows", std::move(rows)},
              {"median_n_delta", t.median_n_delta},
              {"within_factor_2", t.within_factor_2},
              {"all_positive", t.all_positive}};
}

}  // namespace qdesign
