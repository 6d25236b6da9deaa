// Copyright 2026 The oamsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OAMSIM_RNG_HPP
#define OAMSIM_RNG_HPP

#include <cstdint>

namespace oamsim {

/// splitmix64: tiny, fast, and identical on every platform. All sampling in
/// the simulator goes through this generator so count tables are reproducible
/// bit-for-bit from (seed, stream indices) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Derive an independent stream from (seed, a, b); used per measurement cell
/// so results are independent of evaluation order (D20).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Standard normal via Box-Muller.
double sample_normal(SplitMix64& rng);

/// Exact Poisson sampling. Large means are split into chunks (Poisson
/// additivity) so Knuth's product method never underflows.
std::int64_t sample_poisson(SplitMix64& rng, double mean);

}  // namespace oamsim

#endif  // OAMSIM_RNG_HPP
