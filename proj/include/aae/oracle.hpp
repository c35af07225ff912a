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

#ifndef AAE_ORACLE_HPP_
#define AAE_ORACLE_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "aae/core_math.hpp"

namespace aae {

/// An estimation target: the true good-state probability, known to the
/// harness only. Estimators interact with it exclusively through Oracle.
struct AmplitudeProblem {
  double p_true{0.0};
  std::string label;
};

/// Running totals across all measure calls on one oracle.
/// oracle_queries = sum of shots*m (m = 0 rounds cost nothing),
/// total_shots   = sum of shots.
struct QueryLedger {
  std::int64_t oracle_queries{0};
  std::int64_t total_shots{0};
};

/// Outcome of one batch of measurements at fixed (m, r).
struct MeasurementBatch {
  std::int64_t m{0};
  double r{1.0};
  std::int64_t shots{0};
  std::int64_t good_count{0};
};

/// Measurement abstraction: run the m-iteration amplified circuit with the
/// amplitude scaled by r, `shots` times, and report how many good states
/// were observed. This is the extension point for other backends; nothing
/// behind this interface leaks the true amplitude to an estimator.
class Oracle {
 public:
  virtual ~Oracle() = default;

  /// Requires shots >= 1, m >= 0, 0 < r <= 1.
  virtual MeasurementBatch measure(std::int64_t m, double r, std::int64_t shots) = 0;

  const QueryLedger& ledger() const { return ledger_; }

 protected:
  void charge(std::int64_t m, std::int64_t shots) {
    ledger_.oracle_queries += shots * m;
    ledger_.total_shots += shots;
  }

  QueryLedger ledger_;
};

/// Reference oracle: good_count ~ Binomial(shots, grover_probability(p, m, r))
/// drawn from a seeded mt19937_64 stream. Identical (seed, call sequence)
/// replays identically on any platform.
class SamplingOracle : public Oracle {
 public:
  SamplingOracle(AmplitudeProblem problem, std::uint64_t seed)
      : problem_(std::move(problem)), rng_(seed) {}

  MeasurementBatch measure(std::int64_t m, double r, std::int64_t shots) override;

  const AmplitudeProblem& problem() const { return problem_; }

 private:
  AmplitudeProblem problem_;
  std::mt19937_64 rng_;
};

/// Noise-free test double: good_count = round(shots * probability).
class ExactOracle : public Oracle {
 public:
  explicit ExactOracle(AmplitudeProblem problem) : problem_(std::move(problem)) {}

  MeasurementBatch measure(std::int64_t m, double r, std::int64_t shots) override;

  const AmplitudeProblem& problem() const { return problem_; }

 private:
  AmplitudeProblem problem_;
};

}  // namespace aae

#endif  // AAE_ORACLE_HPP_
