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

#ifndef AAE_ADAPTIVE_HPP_
#define AAE_ADAPTIVE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aae/core_math.hpp"
#include "aae/oracle.hpp"

namespace aae {

struct AdaptiveConfig {
  double epsilon{1e-3};  // target width of the final probability interval
  double alpha{0.05};    // 1 - confidence level
  std::int64_t k_ratio{3};  // odd, >= 3; per-round width target and minimum growth of 2m+1
  std::int64_t n_shots{100};  // batch size by which each round's sample grows

  // 0 means "derive from (epsilon, alpha, k_ratio, n_shots)": four times the
  // worst-case batch count the analysis allows at the smallest admissible
  // adjustment factor 1/4. Hitting the cap means the oracle is not producing
  // the distribution it promised (or alpha/k_ratio are inconsistent), so the
  // run aborts with InnerLoopExceeded instead of spinning.
  std::int64_t max_inner_iterations{0};

  // Apply the p -> p/2 reduction so the estimate is valid for any p in
  // [0, 1]. Realized by folding a factor 1/2 into r on every measure call;
  // the returned interval is doubled back. Callers that can promise
  // p <= 1/2 may switch this off and save roughly half the queries.
  bool halve_input{true};

  // Hard cap on the Grover iteration count, returned by
  // next_iteration_count when a degenerate zero-width interval would
  // otherwise send it to infinity.
  std::int64_t max_grover_iterations{std::int64_t{1} << 50};

  void validate() const;
};

/// Final state of one outer round t of the adaptive loop.
struct RoundState {
  std::int64_t step{0};        // t
  std::int64_t iterations{0};  // Grover iterations m_t this round
  double adjustment{1.0};      // amplitude adjustment factor r_t in [1/4, 1]
  std::int64_t period_k{0};    // branch index the inversion used
  std::int64_t shots{0};       // cumulative sample size N_t of the round
  std::int64_t good{0};        // cumulative good-state count X_t
  std::int64_t batches{0};     // inner-loop iterations j this round
  double half_width{0.0};      // final Hoeffding half-width delta_t
  ProbInterval ci_raw;         // [L_t, U_t] for sin^2((2m+1)*theta_t)
  ThetaInterval theta_ci;      // interval for theta after cap and rescale
};

struct EstimationResult {
  ProbInterval p_interval;  // on the caller's scale (doubled if halve_input)
  std::int64_t n_oracle{0};
  std::int64_t total_shots{0};
  std::vector<RoundState> rounds;
  std::int64_t stopped_at{0};           // outer step the run ended on
  std::int64_t wall_classical_ops{0};   // sum of inner-loop iterations
};

/// The inner loop ran past its analytical bound: either the configuration is
/// inconsistent or the oracle violated its distribution contract.
class InnerLoopExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ceil(log(pi / (k_ratio * epsilon)) / log(k_ratio)), the outer-round budget
/// that makes the final interval width reach epsilon.
std::int64_t round_budget(double epsilon, std::int64_t k_ratio);

/// Half-width sqrt(log(pi^2 * (budget+1) * j^2 / (3*alpha)) / (2*j*n_shots)).
/// The j^2 term is the union bound over the data-dependent stopping index, so
/// all intervals of one round hold simultaneously with probability
/// 1 - alpha/(budget+1).
double confidence_half_width(std::int64_t budget, double alpha, std::int64_t j,
                             std::int64_t n_shots);

/// [max(X/N - delta, 0), min(X/N + delta, 1)].
ProbInterval clamp_ci(std::int64_t good, std::int64_t total, double half_width);

/// Caps both endpoints at arcsin(sqrt(r/2)), then undoes the adjustment by
/// stretching with 1/r when r < 1. The result lies in [0, pi/4].
ThetaInterval cap_and_rescale(const ThetaInterval& iv, double r);

/// Largest m with width <= (pi/2)/(2m+1), i.e. floor(pi/(4*width) - 1/2);
/// a zero-width interval yields `cap` instead of infinity.
std::int64_t next_iteration_count(const ThetaInterval& iv, std::int64_t cap);

/// Branch of theta_lo at iteration count m_next:
/// k = floor(2*(2m+1)*theta_lo / pi), clamped to [0, 2m]. A value exactly on
/// a boundary belongs to the upper branch, per the floor.
PeriodIndex next_period(double theta_lo, std::int64_t m_next);

/// Adjustment factor for the next round: 1 when the interval already fits
/// inside its branch; otherwise sin^2(upper boundary)/sin^2(theta_hi), which
/// slides the shrunk interval's upper end exactly onto the boundary. Always
/// in [1/4, 1].
double next_adjustment_factor(const ThetaInterval& iv, const PeriodIndex& period);

/// Runs the adaptive estimation loop against the oracle and returns a
/// confidence interval of width <= epsilon holding with probability
/// >= 1 - alpha, together with the full round trace.
EstimationResult run_adaptive(const AdaptiveConfig& config, Oracle& oracle);

}  // namespace aae

#endif  // AAE_ADAPTIVE_HPP_
