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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdesign/big_vector.hpp"
#include "qdesign/haar.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

using nlohmann::json;

/// One two-qubit gate placed on qubits (a, b), 1-based, a < b. Nearest-
/// neighbor gates have b == a + 1 and a is the "site" of the model; the
/// all-pairs ensemble also produces non-adjacent placements. The 4x4 gate
/// index pairs as (bit_a, bit_b) with qubit a the more significant bit.
struct PlacedGate {
  int a = 0;
  int b = 0;
  ComplexMatrix matrix;  // 4x4 unitary

  int site() const { return a; }
  bool adjacent() const { return b == a + 1; }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<PlacedGate> gates;  // time order, first applied first

  std::int64_t depth() const { return static_cast<std::int64_t>(gates.size()); }
};

enum class Topology { LineNN, AllPairs, Brickwork };

inline std::string to_string(Topology t) {
  switch (t) {
    case Topology::LineNN: return "line-nn";
    case Topology::AllPairs: return "all-pairs";
    case Topology::Brickwork: return "brickwork";
  }
  throw std::invalid_argument("unknown topology");
}

inline Topology topology_from_string(const std::string& s) {
  if (s == "line-nn") return Topology::LineNN;
  if (s == "all-pairs") return Topology::AllPairs;
  if (s == "brickwork") return Topology::Brickwork;
  throw std::invalid_argument("unknown topology '" + s +
                              "' (expected line-nn | all-pairs | brickwork)");
}

/// Identifies a distribution over n-qubit unitaries: circuit family,
/// depth and seed.
struct EnsembleSpec {
  int n_qubits = 0;
  std::int64_t depth = 0;
  Topology topology = Topology::LineNN;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_qubits < 2)
      throw std::invalid_argument("EnsembleSpec: n_qubits must be >= 2");
    if (depth < 0)
      throw std::invalid_argument("EnsembleSpec: depth must be >= 0");
  }
};

/// One step of the nearest-neighbor walk: site uniform on {1..n-1}, then a
/// Haar 4x4 gate, both drawn from `rng` in that order.
inline PlacedGate sample_step(int n, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_step: n must be >= 2");
  const int site =
      1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - 1)));
  return {site, site + 1, haar_unitary(4, rng)};
}

namespace detail {

/// Unordered pair with lexicographic rank `code` in [0, n(n-1)/2):
/// (1,2),(1,3)...(1,n),(2,3),...
inline std::pair<int, int> unordered_pair_from_code(int n, std::int64_t code) {
  for (int a = 1; a < n; ++a) {
    const std::int64_t block = n - a;
    if (code < block) return {a, a + 1 + static_cast<int>(code)};
    code -= block;
  }
  throw std::invalid_argument("pair code out of range");
}

/// Brickwork site pattern: alternating layers of odd sites (1,3,..) and
/// even sites (2,4,..), each layer left to right, starting odd. A partial
/// final layer is truncated left to right.
inline std::vector<int> brickwork_sites(int n, std::int64_t t) {
  std::vector<int> sites;
  sites.reserve(t);
  bool odd = true;
  while (static_cast<std::int64_t>(sites.size()) < t) {
    for (int s = odd ? 1 : 2;
         s <= n - 1 && static_cast<std::int64_t>(sites.size()) < t; s += 2)
      sites.push_back(s);
    odd = !odd;
    if (n == 2) odd = true;  // only site 1 exists; keep emitting it
  }
  return sites;
}

}  // namespace detail

/// Draw a circuit. Deterministic given the spec: gate g draws from the
/// stream (spec.seed, stream_id = g), so results do not depend on how the
/// caller parallelizes.
inline Circuit sample_circuit(const EnsembleSpec& spec) {
  spec.validate();
  Circuit c;
  c.n_qubits = spec.n_qubits;
  c.gates.reserve(spec.depth);
  switch (spec.topology) {
    case Topology::LineNN:
      for (std::int64_t g = 0; g < spec.depth; ++g) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(g));
        c.gates.push_back(sample_step(spec.n_qubits, rng));
      }
      break;
    case Topology::AllPairs: {
      const std::int64_t pairs =
          static_cast<std::int64_t>(spec.n_qubits) * (spec.n_qubits - 1) / 2;
      for (std::int64_t g = 0; g < spec.depth; ++g) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(g));
        const auto [a, b] = detail::unordered_pair_from_code(
            spec.n_qubits, static_cast<std::int64_t>(rng.uniform_int(pairs)));
        c.gates.push_back({a, b, haar_unitary(4, rng)});
      }
      break;
    }
    case Topology::Brickwork: {
      // Sites are a fixed pattern; only the gate matrices consume randomness.
      const auto sites = detail::brickwork_sites(spec.n_qubits, spec.depth);
      for (std::int64_t g = 0; g < spec.depth; ++g) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(g));
        c.gates.push_back({sites[g], sites[g] + 1, haar_unitary(4, rng)});
      }
      break;
    }
  }
  return c;
}

/// Dense unitary of a two-qubit gate embedded into n qubits. Non-adjacent
/// placements are handled by conjugating with the index permutation that
/// brings (a, b) to the front, not by swap networks.
inline ComplexMatrix embedded_gate_unitary(int n, const PlacedGate& g) {
  if (n < 2 || g.a < 1 || g.b <= g.a || g.b > n)
    throw std::invalid_argument("embedded_gate_unitary: bad gate placement");
  if (g.matrix.rows() != 4 || g.matrix.cols() != 4)
    throw std::invalid_argument("embedded_gate_unitary: gate must be 4x4");
  const std::int64_t dim = checked_ipow(2, n, kDenseCap);
  // Reordered qubit list: (a, b, the rest in increasing order). p(r) maps a
  // reordered basis index to the standard site-major index.
  std::vector<int> order{g.a, g.b};
  for (int q = 1; q <= n; ++q)
    if (q != g.a && q != g.b) order.push_back(q);
  const std::int64_t rest = dim / 4;
  std::vector<std::int64_t> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = std::int64_t{1} << (n - order[i]);

  auto standard_index = [&](std::int64_t r) {
    std::int64_t s = 0;
    for (int i = n - 1; i >= 0; --i) {
      if (r & 1) s += shift[i];
      r >>= 1;
    }
    return s;
  };

  ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
  for (std::int64_t m = 0; m < rest; ++m) {
    std::int64_t rows[4], cols[4];
    for (int gr = 0; gr < 4; ++gr)
      rows[gr] = standard_index((static_cast<std::int64_t>(gr) << (n - 2)) | m);
    for (int i = 0; i < 4; ++i) cols[i] = rows[i];
    for (int gr = 0; gr < 4; ++gr)
      for (int gc = 0; gc < 4; ++gc) e(rows[gr], cols[gc]) = g.matrix(gr, gc);
  }
  return e;
}

/// Product of all embedded gates in time order (last gate leftmost).
/// Dense, capped at 2^n <= 4096.
inline ComplexMatrix circuit_unitary(const Circuit& c) {
  const std::int64_t dim = checked_ipow(2, c.n_qubits, kDenseCap);
  if (dim > kDenseCap)
    throw CapacityError("circuit_unitary: 2^" + std::to_string(c.n_qubits) +
                        " exceeds the dense cap " + std::to_string(kDenseCap));
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : c.gates) u = embedded_gate_unitary(c.n_qubits, g) * u;
  return u;
}

/// Sequential statevector simulation of the circuit; unitary, so the norm
/// is preserved.
inline void apply_circuit_inplace(const Circuit& c, BigVector& state) {
  if (state.local_dim != 2 || state.n_sites != c.n_qubits)
    throw std::invalid_argument(
        "apply_circuit: state must have n_qubits sites of local dimension 2");
  for (const auto& g : c.gates)
    apply_two_qubit_inplace(g.matrix, g.a, g.b, state);
}

inline BigVector apply_circuit_state(const Circuit& c, const BigVector& state) {
  BigVector out = state;
  apply_circuit_inplace(c, out);
  return out;
}

// --- JSON serialization ----------------------------------------------------
//
// Schema: {n, topology, seed, t, gates: [{site, matrix: [[re,im] x 16]}]}
// with matrix entries row-major. Gates of the all-pairs ensemble that act on
// non-adjacent qubits carry an extra "site2" field. Doubles survive the
// round trip bit-exactly.

inline json circuit_to_json(const Circuit& c, Topology topology,
                            std::uint64_t seed) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json m = json::array();
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        m.push_back({g.matrix(i, j).real(), g.matrix(i, j).imag()});
    json jg{{"site", g.a}, {"matrix", std::move(m)}};
    if (!g.adjacent()) jg["site2"] = g.b;
    gates.push_back(std::move(jg));
  }
  return json{{"n", c.n_qubits},
              {"topology", to_string(topology)},
              {"seed", seed},
              {"t", c.gates.size()},
              {"gates", std::move(gates)}};
}

struct CircuitFile {
  Circuit circuit;
  Topology topology = Topology::LineNN;
  std::uint64_t seed = 0;
};

inline CircuitFile circuit_from_json(const json& j) {
  CircuitFile out;
  out.circuit.n_qubits = j.at("n").get<int>();
  out.topology = topology_from_string(j.at("topology").get<std::string>());
  out.seed = j.at("seed").get<std::uint64_t>();
  const auto& gates = j.at("gates");
  if (gates.size() != j.at("t").get<std::size_t>())
    throw std::invalid_argument("circuit json: gate count != t");
  for (const auto& jg : gates) {
    PlacedGate g;
    g.a = jg.at("site").get<int>();
    g.b = jg.contains("site2") ? jg.at("site2").get<int>() : g.a + 1;
    const auto& m = jg.at("matrix");
    if (m.size() != 16)
      throw std::invalid_argument("circuit json: matrix must have 16 entries");
    g.matrix.resize(4, 4);
    std::size_t idx = 0;
    for (Index i = 0; i < 4; ++i)
      for (Index j2 = 0; j2 < 4; ++j2, ++idx)
        g.matrix(i, j2) =
            Complex(m[idx][0].get<double>(), m[idx][1].get<double>());
    if (g.a < 1 || g.b <= g.a || g.b > out.circuit.n_qubits)
      throw std::invalid_argument("circuit json: gate placement out of range");
    if (unitarity_defect(g.matrix) > 1e-10)
      throw std::invalid_argument("circuit json: gate matrix is not unitary");
    out.circuit.gates.push_back(std::move(g));
  }
  return out;
}

}  // namespace qdesign
