/**
 * Copyright 2026 The gbsbench authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBSBENCH_CORE_RNG_HPP
#define GBSBENCH_CORE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace gbs {

/// Stream identifiers used to derive independent substreams from one master
/// seed. Keeping them in one place guarantees different purposes never
/// collide on the same stream.
enum class RngPurpose : std::uint64_t {
  kHaarUnitary = 1,
  kHaarUnitarySecondary = 2,  // second family in discrimination runs
  kBootstrap = 3,
  kFixedUnitary = 4,
  kRandomState = 5,
};

/// Deterministic counter-based random stream.
///
/// Each (master_seed, stream_id, index) triple yields an independent,
/// reproducible stream regardless of how many other streams were consumed
/// before it, which makes trial-parallel Monte Carlo order-independent.
/// The generator is xoshiro256++ with its state expanded from the triple via
/// splitmix64; normal variates use the Marsaglia polar method. No standard
/// library distributions are involved, so the bit stream is stable across
/// compilers and platforms.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, RngPurpose purpose, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 bits of mantissa.
  double uniform();

  /// Standard normal variate.
  double normal();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline RngStream::RngStream(std::uint64_t master_seed, RngPurpose purpose,
                            std::uint64_t index) {
  std::uint64_t x = master_seed;
  (void)splitmix64(x);
  x ^= static_cast<std::uint64_t>(purpose) * 0xD6E8FEB86659FD93ULL;
  (void)splitmix64(x);
  x ^= index * 0xA3EC647659359ACDULL;
  for (auto& s : state_) s = splitmix64(x);
  // xoshiro256++ must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

inline std::uint64_t RngStream::next_u64() {
  auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

inline double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

inline double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

}  // namespace gbs

#endif
