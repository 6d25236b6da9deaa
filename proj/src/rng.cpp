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

#include "oamsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oamsim {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix64 mix(seed);
  std::uint64_t s = mix.next();
  SplitMix64 mix_a(s ^ (0x9E3779B97F4A7C15ULL * (a + 1)));
  s = mix_a.next();
  SplitMix64 mix_b(s ^ (0xC2B2AE3D27D4EB4FULL * (b + 1)));
  return mix_b.next();
}

double sample_normal(SplitMix64& rng) {
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::int64_t poisson_knuth(SplitMix64& rng, double mean) {
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double product = rng.next_double();
  while (product > limit) {
    ++k;
    product *= rng.next_double();
  }
  return k;
}

}  // namespace

std::int64_t sample_poisson(SplitMix64& rng, double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw std::invalid_argument("sample_poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  constexpr double kChunk = 500.0;  // keeps exp(-mean) comfortably above underflow
  std::int64_t total = 0;
  double remaining = mean;
  while (remaining > kChunk) {
    total += poisson_knuth(rng, kChunk);
    remaining -= kChunk;
  }
  return total + poisson_knuth(rng, remaining);
}

}  // namespace oamsim
