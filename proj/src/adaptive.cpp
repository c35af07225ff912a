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

#include "aae/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aae {

namespace {

constexpr double kPi = std::numbers::pi;

// Worst-case inner-loop bound: the analysis shows the loop exits once
//   delta <= c^2/2  with  c = sin^2(sqrt(r/2) * (1/K) * (pi/2)),
// which happens no later than
//   j = max(ceil(4/(c^2 n) * log(pi^2 (T+1)/(3 alpha))), ceil(64/(c^4 n^2))).
// Evaluated at the smallest admissible r = 1/4 and padded 4x, so reaching the
// cap is evidence of a broken oracle, not of bad luck.
std::int64_t default_inner_cap(std::int64_t budget, const AdaptiveConfig& config) {
  const double angle =
      std::sqrt(1.0 / 8.0) * (1.0 / static_cast<double>(config.k_ratio)) * (kPi / 2.0);
  const double s = std::sin(angle);
  const double c = s * s;
  const double n = static_cast<double>(config.n_shots);
  const double log_term =
      std::log(kPi * kPi * static_cast<double>(budget + 1) / (3.0 * config.alpha));
  const double j1 = std::ceil(4.0 / (c * c * n) * log_term);
  const double j2 = std::ceil(64.0 / (c * c * c * c * n * n));
  return 4 * static_cast<std::int64_t>(std::max(j1, j2));
}

}  // namespace

void AdaptiveConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon outside (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0, 1)");
  if (k_ratio < 3 || k_ratio % 2 == 0) throw std::invalid_argument("k_ratio must be odd and >= 3");
  if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
  if (max_inner_iterations < 0) throw std::invalid_argument("max_inner_iterations negative");
  if (max_grover_iterations < 1) throw std::invalid_argument("max_grover_iterations < 1");
}

std::int64_t round_budget(double epsilon, std::int64_t k_ratio) {
  const double ratio =
      std::log(kPi / (static_cast<double>(k_ratio) * epsilon)) / std::log(static_cast<double>(k_ratio));
  const auto t = static_cast<std::int64_t>(std::ceil(ratio - kBoundaryTol));
  return std::max<std::int64_t>(t, 0);
}

double confidence_half_width(std::int64_t budget, double alpha, std::int64_t j,
                             std::int64_t n_shots) {
  if (j < 1) throw std::invalid_argument("batch index must be >= 1");
  const double jj = static_cast<double>(j);
  const double log_arg = kPi * kPi * static_cast<double>(budget + 1) * jj * jj / (3.0 * alpha);
  return std::sqrt(std::log(log_arg) / (2.0 * jj * static_cast<double>(n_shots)));
}

ProbInterval clamp_ci(std::int64_t good, std::int64_t total, double half_width) {
  if (total < 1 || good < 0 || good > total) {
    throw std::invalid_argument("clamp_ci: need 0 <= good <= total, total >= 1");
  }
  const double mean = static_cast<double>(good) / static_cast<double>(total);
  return {std::max(mean - half_width, 0.0), std::min(mean + half_width, 1.0)};
}

ThetaInterval cap_and_rescale(const ThetaInterval& iv, double r) {
  const double cap = std::asin(std::sqrt(r / 2.0));
  ThetaInterval out{std::min(iv.lo, cap), std::min(iv.hi, cap)};
  if (r < 1.0) {
    out.lo = stretch_angle(out.lo, r);
    out.hi = stretch_angle(out.hi, r);
  }
  return out;
}

std::int64_t next_iteration_count(const ThetaInterval& iv, std::int64_t cap) {
  const double w = iv.width();
  if (!(w > 0.0)) return cap;
  const double candidate = kPi / (4.0 * w) - 0.5;
  if (candidate >= static_cast<double>(cap)) return cap;
  const auto m = static_cast<std::int64_t>(std::floor(candidate + kBoundaryTol));
  return std::max<std::int64_t>(m, 0);
}

PeriodIndex next_period(double theta_lo, std::int64_t m_next) {
  if (theta_lo < -kBoundaryTol || theta_lo > kPi / 2.0 + kBoundaryTol) {
    throw std::domain_error("theta_lo outside [0, pi/2]");
  }
  const double scaled = 2.0 * static_cast<double>(2 * m_next + 1) * theta_lo / kPi;
  auto k = static_cast<std::int64_t>(std::floor(scaled));
  k = std::clamp<std::int64_t>(k, 0, 2 * m_next);
  return {k, m_next};
}

double next_adjustment_factor(const ThetaInterval& iv, const PeriodIndex& period) {
  const double boundary = (static_cast<double>(period.k + 1) * (kPi / 2.0)) /
                          static_cast<double>(2 * period.m + 1);
  if (boundary < iv.hi) {
    const double sb = std::sin(boundary);
    const double sh = std::sin(iv.hi);
    return (sb * sb) / (sh * sh);
  }
  return 1.0;
}

EstimationResult run_adaptive(const AdaptiveConfig& config, Oracle& oracle) {
  config.validate();
  // With the p -> p/2 reduction all internal quantities live on the halved
  // scale, so the width target halves too; doubling at the end restores the
  // caller's epsilon exactly (binary halving is lossless).
  const double eps_internal = config.halve_input ? config.epsilon / 2.0 : config.epsilon;
  const std::int64_t budget = round_budget(eps_internal, config.k_ratio);
  const std::int64_t inner_cap = config.max_inner_iterations > 0
                                     ? config.max_inner_iterations
                                     : default_inner_cap(budget, config);
  const QueryLedger before = oracle.ledger();

  EstimationResult out;
  double r = 1.0;
  std::int64_t k_hat = 0;
  std::int64_t m = 0;
  double p_lo = 0.0;
  double p_hi = 1.0;

  for (std::int64_t t = 0; t <= budget; ++t) {
    const double exit_width = period_length(m) / static_cast<double>(config.k_ratio);
    std::int64_t good = 0;
    std::int64_t j = 0;
    double delta = 0.0;
    ProbInterval ci;
    ThetaInterval theta_ci;
    while (true) {
      ++j;
      if (j > inner_cap) {
        throw InnerLoopExceeded("inner loop passed its bound at step " + std::to_string(t) +
                                " (batch " + std::to_string(j) + "); oracle distribution or "
                                "configuration is inconsistent");
      }
      const double r_effective = config.halve_input ? 0.5 * r : r;
      good += oracle.measure(m, r_effective, config.n_shots).good_count;
      delta = confidence_half_width(budget, config.alpha, j, config.n_shots);
      ci = clamp_ci(good, j * config.n_shots, delta);
      theta_ci = cap_and_rescale(invert_interval(ci, PeriodIndex{k_hat, m}), r);
      if (theta_ci.width() <= exit_width) break;
    }

    p_lo = p_from_theta(theta_ci.lo);
    p_hi = p_from_theta(theta_ci.hi);
    out.rounds.push_back(
        {t, m, r, k_hat, j * config.n_shots, good, j, delta, ci, theta_ci});
    out.wall_classical_ops += j;
    out.stopped_at = t;
    if (t == budget || p_hi - p_lo <= eps_internal) break;

    const std::int64_t m_next = next_iteration_count(theta_ci, config.max_grover_iterations);
    const PeriodIndex period = next_period(theta_ci.lo, m_next);
    r = next_adjustment_factor(theta_ci, period);
    k_hat = period.k;
    m = m_next;
  }

  const double scale = config.halve_input ? 2.0 : 1.0;
  out.p_interval = {std::min(scale * p_lo, 1.0), std::min(scale * p_hi, 1.0)};
  out.n_oracle = oracle.ledger().oracle_queries - before.oracle_queries;
  out.total_shots = oracle.ledger().total_shots - before.total_shots;
  return out;
}

}  // namespace aae
