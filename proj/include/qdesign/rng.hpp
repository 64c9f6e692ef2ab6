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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace qdesign {

/// Counter-seeded pseudorandom stream (xoshiro256++ over a splitmix64
/// expansion of (seed, stream_id)).
///
/// Identical (seed, stream_id) pairs yield identical draw sequences on every
/// platform; distinct stream_ids give statistically independent streams.
/// All distribution transforms are implemented here rather than taken from
/// <random> because the standard leaves distribution sequences
/// implementation-defined, and reproducibility of every emitted number is a
/// hard contract of this library. Streams are cheap to construct; parallel
/// work items must each derive their own stream instead of sharing one.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id), has_cached_normal_(false),
        cached_normal_(0.0) {
    // splitmix64 walk, offset by the stream id along the Weyl sequence.
    std::uint64_t x = seed + stream_id * 0x9E3779B97F4A7C15ULL;
    for (auto& s : state_) s = splitmix64(x);
    // All-zero state is invalid for xoshiro; the splitmix expansion of any
    // input avoids it except with negligible probability, but guard anyway.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Derived stream for a parallel work item.
  RngStream substream(std::uint64_t id) const {
    return RngStream(splitmix_of(seed_, stream_id_), id);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Rejection from a power-of-two mask, so
  /// the result is exactly uniform.
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_int: bound must be > 0");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t r = next_u64() & mask;
      if (r < bound) return r;
    }
  }

  /// Standard normal via Marsaglia's polar method (pairs are cached).
  double normal() {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
  }

  /// Complex value with independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// A fresh 64-bit seed from OS entropy, for the CLI's record-the-seed
  /// default.
  static std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int n) {
    return (x << n) | (x >> (64 - n));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix_of(std::uint64_t seed, std::uint64_t id) {
    std::uint64_t x = seed + id * 0x9E3779B97F4A7C15ULL;
    return splitmix64(x);
  }

  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  bool has_cached_normal_;
  double cached_normal_;
};

}  // namespace qdesign
