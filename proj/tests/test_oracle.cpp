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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "aae/oracle.hpp"
#include "aae/rng.hpp"

using namespace aae;

TEST_CASE("exact oracle returns rounded expectations") {
  ExactOracle oracle({0.2, "exact"});
  CHECK(oracle.measure(0, 1.0, 100).good_count == 20);
  // 100 * sin^2(3 arcsin sqrt(0.2)) = 96.8
  CHECK(oracle.measure(1, 1.0, 100).good_count == 97);

  ExactOracle zero({0.0, "null"});
  CHECK(zero.measure(0, 1.0, 100).good_count == 0);
  CHECK(zero.measure(5, 0.5, 100).good_count == 0);
}

TEST_CASE("degenerate probabilities are exact for the sampler too") {
  // grover probability 0: p_true = 0
  SamplingOracle zero({0.0, ""}, 1);
  CHECK(zero.measure(3, 1.0, 100).good_count == 0);
  // grover probability 1: arcsin sqrt(0.25) = pi/6, sin^2(3*pi/6) = 1
  SamplingOracle one({0.25, ""}, 2);
  CHECK(one.measure(1, 1.0, 57).good_count == 57);
}

TEST_CASE("golden million-shot draw") {
  SamplingOracle oracle({0.2, ""}, 42);
  const MeasurementBatch batch = oracle.measure(0, 1.0, 1000000);
  // 3.3 sigma band around the mean, sigma = sqrt(0.2*0.8/1e6)
  CHECK(batch.good_count >= 198680);
  CHECK(batch.good_count <= 201320);
  // frozen so the stream stays bit-stable
  CHECK(batch.good_count == 199456);
}

TEST_CASE("equal seeds and call sequences replay identically") {
  SamplingOracle a({0.37, ""}, 99);
  SamplingOracle b({0.37, ""}, 99);
  std::mt19937_64 plan(5);
  for (int i = 0; i < 200; ++i) {
    const auto m = static_cast<std::int64_t>(plan() % 8);
    const double r = 0.25 + 0.75 * uniform53(plan);
    const auto shots = static_cast<std::int64_t>(1 + plan() % 300);
    CHECK(a.measure(m, r, shots).good_count == b.measure(m, r, shots).good_count);
  }
  CHECK(a.ledger().oracle_queries == b.ledger().oracle_queries);
  CHECK(a.ledger().total_shots == b.ledger().total_shots);
}

TEST_CASE("ledger counts queries and shots") {
  SamplingOracle oracle({0.3, ""}, 7);
  CHECK(oracle.ledger().oracle_queries == 0);
  CHECK(oracle.ledger().total_shots == 0);

  oracle.measure(0, 1.0, 100);
  CHECK(oracle.ledger().oracle_queries == 0);  // m = 0 costs no queries
  CHECK(oracle.ledger().total_shots == 100);

  oracle.measure(3, 1.0, 200);
  CHECK(oracle.ledger().oracle_queries == 600);
  CHECK(oracle.ledger().total_shots == 300);
}

TEST_CASE("ledger additivity over a random call plan") {
  SamplingOracle oracle({0.11, ""}, 8);
  std::mt19937_64 plan(6);
  std::int64_t queries = 0;
  std::int64_t shots_total = 0;
  for (int i = 0; i < 500; ++i) {
    const auto m = static_cast<std::int64_t>(plan() % 20);
    const auto shots = static_cast<std::int64_t>(1 + plan() % 50);
    oracle.measure(m, 1.0, shots);
    queries += m * shots;
    shots_total += shots;
    REQUIRE(oracle.ledger().oracle_queries == queries);
    REQUIRE(oracle.ledger().total_shots == shots_total);
  }
}

TEST_CASE("sampler matches the binomial mean and variance") {
  const double p = 0.3;
  const std::int64_t m = 1;
  const double r = 0.9;
  const std::int64_t shots = 100;
  const double q = grover_probability(p, m, r);

  const int trials = 10000;
  std::vector<double> fractions;
  fractions.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    SamplingOracle oracle({p, ""}, splitmix64(0xD15EA5E5ULL + static_cast<std::uint64_t>(i)));
    fractions.push_back(static_cast<double>(oracle.measure(m, r, shots).good_count) /
                        static_cast<double>(shots));
  }
  double mean = 0.0;
  for (double f : fractions) mean += f;
  mean /= trials;
  double var = 0.0;
  for (double f : fractions) var += (f - mean) * (f - mean);
  var /= trials - 1;

  const double sigma_mean = std::sqrt(q * (1.0 - q) / static_cast<double>(shots)) /
                            std::sqrt(static_cast<double>(trials));
  CHECK(std::fabs(mean - q) <= 4.0 * sigma_mean);
  const double expected_var = q * (1.0 - q) / static_cast<double>(shots);
  CHECK(var >= 0.8 * expected_var);
  CHECK(var <= 1.2 * expected_var);
}

TEST_CASE("binomial sampler covers both internal paths") {
  std::mt19937_64 rng(101);
  // inversion path: n*q small
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t k = binomial_draw(rng, 1000, 0.004);
    REQUIRE(k >= 0);
    REQUIRE(k <= 1000);
  }
  // composition path: n*q large, plus the complement branch
  for (int i = 0; i < 500; ++i) {
    const std::int64_t k = binomial_draw(rng, 800, 0.77);
    REQUIRE(k >= 0);
    REQUIRE(k <= 800);
  }
  CHECK(binomial_draw(rng, 100, 0.0) == 0);
  CHECK(binomial_draw(rng, 100, 1.0) == 100);
}
