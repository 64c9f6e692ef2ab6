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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdesign/circuit.hpp"
#include "qdesign/hamiltonian.hpp"
#include "qdesign/moment_operator.hpp"
#include "qdesign/numerics.hpp"

namespace qdesign {

// --- Design error versus depth ----------------------------------------------

struct DesignErrorRow {
  std::int64_t t = 0;
  double error = 0;      // ||G_nu^t - G_Haar||  (operator norm)
  double predicted = 0;  // (1 - delta)^t
};

struct DesignErrorTable {
  int n = 0;
  int k = 0;
  double delta_walk = 0;
  std::uint64_t seed = 0;  // gap-solver seed
  std::vector<DesignErrorRow> rows;
};

namespace detail {

/// Greedy addition-chain power cache: each requested exponent costs one
/// GEMM per chain step, and intermediate powers are reused across an
/// ascending t list. Matrices at dim 4096 weigh 256 MiB each, so the cache
/// is per-call and dropped on return.
class MatrixPowerCache {
 public:
  explicit MatrixPowerCache(const ComplexMatrix& base) { cache_[1] = base; }

  const ComplexMatrix& power(std::int64_t t) {
    if (t < 1) throw std::invalid_argument("power: t must be >= 1");
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    auto lower = largest_leq(t);
    ComplexMatrix cur = lower->second;
    std::int64_t e = lower->first;
    while (e < t) {
      const auto step = largest_leq(t - e);
      cur = cur * cache_.at(step->first);
      e += step->first;
      cache_[e] = cur;
    }
    return cache_.at(t);
  }

 private:
  std::map<std::int64_t, ComplexMatrix>::const_iterator largest_leq(
      std::int64_t t) const {
    auto it = cache_.upper_bound(t);
    --it;
    return it;
  }

  std::map<std::int64_t, ComplexMatrix> cache_;
};

}  // namespace detail

/// Exact operator norm ||G_nu^t - G_Haar|| for each t, next to the
/// gap-solver prediction (1-delta)^t. Dense only; powers by addition
/// chains, norms by Hermitian eigen-extremes.
inline DesignErrorTable design_error(int n, int k,
                                     std::vector<std::int64_t> t_list,
                                     const GapOptions& options = {}) {
  const auto ctx = make_moment_context(n, k);
  if (ctx.dim > kDenseCap)
    throw CapacityError("design_error: dimension " + std::to_string(ctx.dim) +
                        " exceeds the dense cap " + std::to_string(kDenseCap));
  DesignErrorTable table;
  table.n = n;
  table.k = k;
  table.seed = options.seed;
  table.delta_walk = spectral_gap(n, k, options).delta_walk;

  const ComplexMatrix gnu = dense_gnu(ctx);
  const ComplexMatrix ghaar = dense_haar_projector(ctx);
  std::sort(t_list.begin(), t_list.end());
  t_list.erase(std::unique(t_list.begin(), t_list.end()), t_list.end());

  detail::MatrixPowerCache powers(gnu);
  for (const std::int64_t t : t_list) {
    if (t < 0) throw std::invalid_argument("design_error: t must be >= 0");
    DesignErrorRow row;
    row.t = t;
    const ComplexMatrix diff =
        t == 0 ? (ComplexMatrix::Identity(ctx.dim, ctx.dim) - ghaar).eval()
               : (powers.power(t) - ghaar).eval();
    row.error = operator_norm_hermitian(diff);
    row.predicted = std::pow(1.0 - table.delta_walk, static_cast<double>(t));
    table.rows.push_back(row);
  }
  return table;
}

// --- Frame potential ----------------------------------------------------------

struct FramePotentialEstimate {
  EnsembleSpec spec;
  int k = 0;
  std::int64_t samples = 0;
  double value = 0;
  double std_error = 0;   // bootstrap SE of the mean
  double haar_value = 0;  // tr(G_Haar) = k! for 2^n >= k
};

/// Haar frame potential E|tr(U^dag V)|^{2k} computed as the trace of the
/// exact Haar projector (the dimension of the permutation-operator span).
inline double haar_frame_potential(int n, int k) {
  const RealMatrix w = gram_matrix(k, std::int64_t{1} << n);
  const GramInverse gi = invert_gram(w, /*allow_pseudo=*/true);
  return (gi.inv * w).trace();
}

/// Monte-Carlo frame potential of a circuit ensemble over independent pairs
/// of circuits, with bootstrap standard error. At t = 0 every pair is the
/// identity, so the estimate is exactly 4^{nk} with zero variance.
inline FramePotentialEstimate frame_potential(const EnsembleSpec& spec, int k,
                                              std::int64_t samples) {
  spec.validate();
  if (samples < 1) throw std::invalid_argument("frame_potential: samples >= 1");
  const std::int64_t dim = checked_ipow(2, spec.n_qubits, kDenseCap);
  if (dim > kDenseCap)
    throw CapacityError("frame_potential: 2^" + std::to_string(spec.n_qubits) +
                        " exceeds the dense trace cap " +
                        std::to_string(kDenseCap));
  std::vector<double> values(samples);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 0; s < samples; ++s) {
    EnsembleSpec a = spec, b = spec;
    a.seed = RngStream(spec.seed, 2 * static_cast<std::uint64_t>(s)).next_u64();
    b.seed =
        RngStream(spec.seed, 2 * static_cast<std::uint64_t>(s) + 1).next_u64();
    const ComplexMatrix u = circuit_unitary(sample_circuit(a));
    const ComplexMatrix v = circuit_unitary(sample_circuit(b));
    const Complex tr = (u.adjoint() * v).trace();
    values[s] = std::pow(std::norm(tr), k);  // |tr|^{2k}
  }
  FramePotentialEstimate est;
  est.spec = spec;
  est.k = k;
  est.samples = samples;
  est.value = sample_mean(values);
  est.std_error = bootstrap_se_mean(values, RngStream(spec.seed, 0xb00537));
  est.haar_value = haar_frame_potential(spec.n_qubits, k);
  return est;
}

// --- Equilibration / data hiding ----------------------------------------------

/// A two-outcome measurement M = V^dag (Pi (x) I) V: a depth-s random
/// circuit V followed by the projector onto |up> on `target_qubits`.
/// 0 <= M <= I by construction; tr(M)/2^n = 2^{-|targets|}. Circuit
/// complexity of M is at most s (gate count of V).
struct MeasurementSpec {
  int n = 0;
  std::int64_t complexity = 0;  // gate count of V
  std::vector<int> target_qubits;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 2) throw std::invalid_argument("MeasurementSpec: n >= 2");
    if (complexity < 0)
      throw std::invalid_argument("MeasurementSpec: complexity >= 0");
    for (const int q : target_qubits)
      if (q < 1 || q > n)
        throw std::invalid_argument("MeasurementSpec: target qubit out of range");
  }

  double trace_term() const {  // tr(M)/2^n
    return std::ldexp(1.0, -static_cast<int>(target_qubits.size()));
  }
};

struct DeviationSample {
  std::int64_t t = 0;
  int trial = 0;
  double deviation = 0;   // |<up|U^dag M U|up> - tr(M)/2^n|
  double trace_term = 0;  // tr(M)/2^n
  std::uint64_t seed = 0;
};

struct DeviationSummary {
  std::int64_t t = 0;
  double median_dev = 0;
  double p90_dev = 0;
};

struct EquilibrationResult {
  int n = 0;
  std::int64_t measurement_complexity = 0;
  std::vector<int> target_qubits;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<DeviationSample> samples;
  std::vector<DeviationSummary> summary;
  // Haar proxy: deviations of normalized complex-Gaussian states under the
  // same measurement family (the induced state distribution is exactly the
  // Haar state distribution, at 2^n instead of 4^n cost).
  double baseline_median = 0;
  double baseline_p90 = 0;
};

namespace detail {

/// <chi|Pi|chi>/<chi|chi> for the projector onto |up> of `targets`.
/// Normalizing by the state norm keeps M = I (empty targets) exactly at
/// deviation zero instead of unitary-rounding noise.
inline double projector_expectation(const BigVector& chi,
                                    const std::vector<int>& targets) {
  std::int64_t mask = 0;
  for (const int q : targets)
    mask |= std::int64_t{1} << (chi.n_sites - q);
  double hit = 0, total = 0;
  for (std::int64_t idx = 0; idx < chi.dimension(); ++idx) {
    const double w = std::norm(chi.amps[idx]);
    total += w;
    if ((idx & mask) == 0) hit += w;
  }
  if (mask == 0) return 1.0;  // Pi = I exactly
  return hit / total;
}

}  // namespace detail

/// Deviation-vs-depth experiment for Eq.-style data hiding: per depth t and
/// trial, evolve |up^n> through a random circuit U of depth t, measure a
/// fresh low-complexity M from the family, and record
/// |<up|U^dag M U|up> - tr(M)/2^n|. Fully deterministic given `seed`.
inline EquilibrationResult equilibration_experiment(
    int n, const std::vector<std::int64_t>& t_list,
    const MeasurementSpec& family, int trials, std::uint64_t seed,
    Topology topology = Topology::LineNN) {
  if (n < 2 || n > 14)
    throw CapacityError(
        "equilibration_experiment: n must be in [2, 14] (statevector budget "
        "2^14)");
  if (family.n != n)
    throw std::invalid_argument("equilibration_experiment: family.n != n");
  family.validate();
  if (trials < 1)
    throw std::invalid_argument("equilibration_experiment: trials >= 1");

  EquilibrationResult result;
  result.n = n;
  result.measurement_complexity = family.complexity;
  result.target_qubits = family.target_qubits;
  result.trials = trials;
  result.seed = seed;
  const double trace_term = family.trace_term();

  const std::int64_t work_items =
      static_cast<std::int64_t>(t_list.size()) * trials;
  result.samples.resize(work_items);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t work_id = 0; work_id < work_items; ++work_id) {
    const std::size_t ti = static_cast<std::size_t>(work_id / trials);
    const int trial = static_cast<int>(work_id % trials);
    const std::int64_t t = t_list[ti];
    EnsembleSpec uspec{n, t, topology,
                       RngStream(seed, 2 * static_cast<std::uint64_t>(work_id))
                           .next_u64()};
    EnsembleSpec vspec{n, family.complexity, Topology::LineNN,
                       RngStream(family.seed,
                                 static_cast<std::uint64_t>(work_id))
                           .next_u64()};
    BigVector state = BigVector::basis_state(n, 2, 0);  // |up^n>
    apply_circuit_inplace(sample_circuit(uspec), state);
    apply_circuit_inplace(sample_circuit(vspec), state);
    const double p = detail::projector_expectation(state, family.target_qubits);
    DeviationSample sample;
    sample.t = t;
    sample.trial = trial;
    sample.deviation = std::abs(p - trace_term);
    sample.trace_term = trace_term;
    sample.seed = uspec.seed;
    result.samples[work_id] = sample;
  }

  for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
    std::vector<double> devs(trials);
    for (int trial = 0; trial < trials; ++trial)
      devs[trial] = result.samples[ti * trials + trial].deviation;
    DeviationSummary s;
    s.t = t_list[ti];
    s.median_dev = median(devs);
    s.p90_dev = quantile(devs, 0.9);
    result.summary.push_back(s);
  }

  // Gaussian-state Haar proxy under the same measurement family.
  std::vector<double> base(trials);
#pragma omp parallel for schedule(dynamic, 4)
  for (int trial = 0; trial < trials; ++trial) {
    RngStream rng(seed ^ 0x474155535349414eULL, trial);
    BigVector state = BigVector::random_state(n, 2, rng);
    EnsembleSpec vspec{n, family.complexity, Topology::LineNN,
                       RngStream(family.seed ^ 0x1, trial).next_u64()};
    apply_circuit_inplace(sample_circuit(vspec), state);
    base[trial] = std::abs(
        detail::projector_expectation(state, family.target_qubits) -
        trace_term);
  }
  result.baseline_median = median(base);
  result.baseline_p90 = quantile(base, 0.9);
  return result;
}

}  // namespace qdesign
