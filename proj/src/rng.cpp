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

#include "aae/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace aae {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t binomial_draw(std::mt19937_64& rng, std::int64_t n, double q) {
  if (n < 0) throw std::invalid_argument("binomial_draw: negative trial count");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binomial_draw: q outside [0, 1]");
  if (n == 0 || q == 0.0) return 0;
  if (q == 1.0) return n;
  if (q > 0.5) return n - binomial_draw(rng, n, 1.0 - q);

  if (q * static_cast<double>(n) <= 30.0) {
    // Walk the CDF from k = 0 with the pmf recurrence. (1-q)^n stays well
    // above the underflow threshold because n*q <= 30 and q <= 1/2.
    const double u = uniform53(rng);
    double pmf = std::exp(static_cast<double>(n) * std::log1p(-q));
    double cdf = pmf;
    std::int64_t k = 0;
    const double ratio = q / (1.0 - q);
    while (u > cdf && k < n) {
      pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * ratio;
      ++k;
      cdf += pmf;
    }
    return k;
  }

  std::int64_t count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (uniform53(rng) < q) ++count;
  }
  return count;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view method,
                              std::size_t eps_index, std::size_t p_index) {
  std::uint64_t h = splitmix64(fnv1a64(method) ^ master_seed);
  h = splitmix64(h ^ (0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(eps_index)));
  h = splitmix64(h ^ (0xBF58476D1CE4E5B9ULL + static_cast<std::uint64_t>(p_index)));
  return h;
}

}  // namespace aae
