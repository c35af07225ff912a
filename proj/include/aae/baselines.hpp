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

#ifndef AAE_BASELINES_HPP_
#define AAE_BASELINES_HPP_

#include <cstdint>

#include "aae/core_math.hpp"
#include "aae/oracle.hpp"

namespace aae {

/// Maximum-likelihood estimation over the doubling schedule
/// m = 0, 1, 2, 4, ..., 2^(rounds-1), with a likelihood-ratio interval.
struct MlaeConfig {
  std::int64_t rounds{8};            // schedule length T; points m_0..m_T
  std::int64_t n_shots{100};         // shots per schedule point
  std::int64_t grid_resolution{0};   // global theta grid points; 0 -> 4*2^T + 1
  double alpha{0.05};
};

enum class CiMethod { chernoff_hoeffding, clopper_pearson };

/// Iterative baseline: per-level confidence intervals plus a decrement
/// search for the largest usable iteration count. Reference
/// reimplementation for query/classical-cost comparison, not a port.
struct IqaeConfig {
  double epsilon{1e-3};
  double alpha{0.05};
  std::int64_t n_shots{100};
  CiMethod ci_method{CiMethod::clopper_pearson};
  std::int64_t max_batches{0};  // total batch cap; 0 -> derived from epsilon
};

struct BaselineResult {
  ProbInterval interval;
  double point_estimate{0.0};
  std::int64_t n_oracle{0};
  std::int64_t total_shots{0};
  // Likelihood evaluations for MLAE; decrement probes plus interval
  // evaluations for IQAE.
  std::int64_t classical_ops{0};
  // Rounds where the decrement search made no progress (IQAE) or the
  // likelihood was flat (MLAE).
  std::int64_t flagged_rounds{0};
  bool degenerate{false};
};

/// True when the interval sits inside one monotone branch of
/// sin^2((2m+1)*theta); the predicate the decrement search probes.
bool fits_single_period(const ThetaInterval& iv, std::int64_t m);

/// Exact binomial interval via beta quantiles:
/// lower = BetaInv(alpha/2; X, N-X+1), upper = BetaInv(1-alpha/2; X+1, N-X),
/// with lower = 0 at X = 0 and upper = 1 at X = N.
ProbInterval clopper_pearson(std::int64_t good, std::int64_t total, double alpha);

BaselineResult run_mlae(const MlaeConfig& config, Oracle& oracle);

BaselineResult run_iqae(const IqaeConfig& config, Oracle& oracle);

}  // namespace aae

#endif  // AAE_BASELINES_HPP_
