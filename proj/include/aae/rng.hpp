// Copyright 2026 The aae Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AAE_RNG_HPP_
#define AAE_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace aae {

// Everything here is specified bit-for-bit so that seeded runs replay
// identically on any platform: mt19937_64 is pinned by the C++ standard,
// uniforms are built from the top 53 bits, and the binomial sampler below
// never goes through implementation-defined std::*_distribution code.

/// Name of the random stream recorded in report metadata.
inline constexpr std::string_view kPrngName = "mt19937_64/53bit";

/// splitmix64 finalizer; also usable as a standalone mixing step.
std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over the bytes of a string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Uniform double in [0, 1) from the generator's top 53 bits.
double uniform53(std::mt19937_64& rng);

/// Exact binomial draw: CDF inversion (one uniform) when n*q is small,
/// Bernoulli composition otherwise. No normal approximation anywhere.
std::int64_t binomial_draw(std::mt19937_64& rng, std::int64_t n, double q);

/// Per-run seed for benchmark cells:
///   mix(mix(mix(fnv1a64(method) ^ master) ^ (A + eps_index)) ^ (B + p_index))
/// with mix = splitmix64, A = 0x9E3779B97F4A7C15, B = 0xBF58476D1CE4E5B9.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view method,
                              std::size_t eps_index, std::size_t p_index);

}  // namespace aae

#endif  // AAE_RNG_HPP_
