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

#include "aae/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "aae/adaptive.hpp"
#include "aae/stats.hpp"

namespace aae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

bool fits_single_period(const ThetaInterval& iv, std::int64_t m) {
  const double denom = static_cast<double>(2 * m + 1);
  auto k = static_cast<std::int64_t>(std::floor(2.0 * denom * iv.lo / kPi));
  k = std::clamp<std::int64_t>(k, 0, 2 * m);
  const double upper = (static_cast<double>(k + 1) * kHalfPi) / denom;
  return iv.hi <= upper;
}

ProbInterval clopper_pearson(std::int64_t good, std::int64_t total, double alpha) {
  if (total < 1 || good < 0 || good > total) {
    throw std::invalid_argument("clopper_pearson: need 0 <= good <= total");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("clopper_pearson: bad alpha");
  const auto x = static_cast<double>(good);
  const auto n = static_cast<double>(total);
  const double lo = good == 0 ? 0.0 : ibeta_inv(x, n - x + 1.0, alpha / 2.0);
  const double hi = good == total ? 1.0 : ibeta_inv(x + 1.0, n - x, 1.0 - alpha / 2.0);
  return {lo, hi};
}

BaselineResult run_mlae(const MlaeConfig& config, Oracle& oracle) {
  if (config.rounds < 1) throw std::invalid_argument("mlae: rounds must be >= 1");
  if (config.n_shots < 1) throw std::invalid_argument("mlae: n_shots must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("mlae: bad alpha");
  if (config.grid_resolution != 0 && config.grid_resolution < 33) {
    throw std::invalid_argument("mlae: grid_resolution below 33 cannot resolve any schedule");
  }
  const QueryLedger before = oracle.ledger();

  // Schedule m = 0, 1, 2, 4, ..., 2^(rounds-1).
  std::vector<std::int64_t> schedule{0};
  for (std::int64_t t = 1; t <= config.rounds; ++t) {
    schedule.push_back(std::int64_t{1} << (t - 1));
  }
  std::vector<std::int64_t> good(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    good[i] = oracle.measure(schedule[i], 1.0, config.n_shots).good_count;
  }

  BaselineResult result;
  const double n = static_cast<double>(config.n_shots);
  auto log_likelihood = [&](double theta) {
    ++result.classical_ops;
    double ll = 0.0;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const double s = std::sin(static_cast<double>(2 * schedule[i] + 1) * theta);
      const double q = s * s;
      const auto x = static_cast<double>(good[i]);
      if (x > 0.0) ll += x * std::log(std::max(q, 1e-300));
      if (x < n) ll += (n - x) * std::log(std::max(1.0 - q, 1e-300));
    }
    return ll;
  };

  // Global scan: the finest schedule term oscillates with branch width
  // pi/(2*(2*m_max+1)), so sample every branch several times to keep the
  // argmax on the right branch before refining.
  const std::int64_t grid_points = config.grid_resolution > 0
                                       ? config.grid_resolution
                                       : 8 * (2 * schedule.back() + 1) + 1;
  std::vector<double> values(static_cast<std::size_t>(grid_points));
  const double spacing = kHalfPi / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  for (std::int64_t i = 0; i < grid_points; ++i) {
    values[static_cast<std::size_t>(i)] = log_likelihood(static_cast<double>(i) * spacing);
    if (values[static_cast<std::size_t>(i)] > values[best]) best = static_cast<std::size_t>(i);
  }

  const double value_spread =
      *std::max_element(values.begin(), values.end()) - *std::min_element(values.begin(), values.end());
  if (value_spread < 1e-9) {
    // Flat likelihood: every theta explains the data equally well.
    result.degenerate = true;
    result.flagged_rounds = static_cast<std::int64_t>(schedule.size());
    result.interval = {0.0, 1.0};
    result.point_estimate = 0.5;
    result.n_oracle = oracle.ledger().oracle_queries - before.oracle_queries;
    result.total_shots = oracle.ledger().total_shots - before.total_shots;
    return result;
  }

  // Local refinement around the grid argmax.
  double theta_hat = static_cast<double>(best) * spacing;
  double ll_hat = values[best];
  double h = spacing;
  for (int stage = 0; stage < 60 && h > 1e-15; ++stage) {
    const double left = std::max(0.0, theta_hat - 2.0 * h);
    const double right = std::min(kHalfPi, theta_hat + 2.0 * h);
    constexpr int kStagePoints = 257;
    h = (right - left) / (kStagePoints - 1);
    for (int i = 0; i < kStagePoints; ++i) {
      const double theta = left + static_cast<double>(i) * h;
      const double ll = log_likelihood(theta);
      if (ll > ll_hat) {
        ll_hat = ll;
        theta_hat = theta;
      }
    }
  }

  // Likelihood-ratio interval: the connected set around the maximum where
  // the log-likelihood drop stays within the chi-square(1df) threshold.
  const double threshold = ll_hat - chi_square_quantile_1df(1.0 - config.alpha) / 2.0;
  auto bisect_crossing = [&](double inside, double outside) {
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (inside + outside);
      if (log_likelihood(mid) >= threshold) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return 0.5 * (inside + outside);
  };

  // Walk outward from the refined maximum; `inside` is the innermost point
  // known to clear the threshold (the grid sample of a narrow peak may not).
  double theta_lo = 0.0;
  double inside = theta_hat;
  for (std::size_t i = best + 1; i-- > 0;) {
    const double theta = static_cast<double>(i) * spacing;
    if (theta >= theta_hat) continue;
    if (values[i] < threshold) {
      theta_lo = bisect_crossing(inside, theta);
      break;
    }
    inside = theta;
  }
  double theta_hi = kHalfPi;
  inside = theta_hat;
  for (std::size_t i = best; i < values.size(); ++i) {
    const double theta = static_cast<double>(i) * spacing;
    if (theta <= theta_hat) continue;
    if (values[i] < threshold) {
      theta_hi = bisect_crossing(inside, theta);
      break;
    }
    inside = theta;
  }

  result.interval = {p_from_theta(theta_lo), p_from_theta(theta_hi)};
  result.point_estimate = p_from_theta(theta_hat);
  result.n_oracle = oracle.ledger().oracle_queries - before.oracle_queries;
  result.total_shots = oracle.ledger().total_shots - before.total_shots;
  return result;
}

BaselineResult run_iqae(const IqaeConfig& config, Oracle& oracle) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw std::invalid_argument("iqae: epsilon outside (0, 1)");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("iqae: bad alpha");
  if (config.n_shots < 1) throw std::invalid_argument("iqae: n_shots must be >= 1");
  const QueryLedger before = oracle.ledger();

  // Levels advance only when 2m+1 at least doubles, so this bounds the number
  // of distinct levels; it also sizes the union bound across levels.
  const auto level_budget =
      static_cast<std::int64_t>(std::ceil(std::log2(kPi / config.epsilon))) + 4;

  std::int64_t batch_cap = config.max_batches;
  if (batch_cap == 0) {
    // Same shape as the adaptive loop's inner bound, with the decrement
    // search's effective one-sixth-period margin in place of 1/K.
    const double s = std::sin(std::sqrt(0.5) * (1.0 / 6.0) * kHalfPi);
    const double c = s * s;
    const double n = static_cast<double>(config.n_shots);
    const double log_term =
        std::log(kPi * kPi * static_cast<double>(level_budget) / (3.0 * config.alpha));
    const double j1 = std::ceil(4.0 / (c * c * n) * log_term);
    const double j2 = std::ceil(64.0 / (c * c * c * c * n * n));
    batch_cap = 4 * level_budget * static_cast<std::int64_t>(std::max(j1, j2));
  }

  BaselineResult result;
  ThetaInterval theta{0.0, kHalfPi};
  std::int64_t m_cur = 0;
  std::int64_t k_cur = 0;
  std::int64_t good = 0;
  std::int64_t j = 0;
  std::int64_t levels = 1;
  std::int64_t total_batches = 0;

  while (true) {
    ++j;
    if (++total_batches > batch_cap) {
      result.degenerate = true;
      result.interval = {p_from_theta(theta.lo), p_from_theta(theta.hi)};
      break;
    }
    good += oracle.measure(m_cur, 1.0, config.n_shots).good_count;
    const std::int64_t total = j * config.n_shots;

    ProbInterval ci;
    if (config.ci_method == CiMethod::chernoff_hoeffding) {
      ci = clamp_ci(good, total,
                    confidence_half_width(level_budget - 1, config.alpha, j, config.n_shots));
    } else {
      const double alpha_j = 6.0 * config.alpha /
                             (kPi * kPi * static_cast<double>(level_budget) *
                              static_cast<double>(j) * static_cast<double>(j));
      ci = clopper_pearson(good, total, std::min(alpha_j, 0.5));
    }
    ++result.classical_ops;

    const ThetaInterval inverted = invert_interval(ci, PeriodIndex{k_cur, m_cur});
    theta.lo = std::max(theta.lo, inverted.lo);
    theta.hi = std::min(theta.hi, inverted.hi);
    if (theta.lo > theta.hi) {
      const double mid = 0.5 * (theta.lo + theta.hi);
      theta = {mid, mid};
      result.degenerate = true;
    }

    const double p_lo = p_from_theta(theta.lo);
    const double p_hi = p_from_theta(theta.hi);
    if (p_hi - p_lo <= config.epsilon || result.degenerate) {
      result.interval = {p_lo, p_hi};
      break;
    }

    // Decrement search: start from the largest m whose branch could hold the
    // interval and walk down until it actually fits; accept only if that at
    // least doubles 2m+1, otherwise keep sampling at the current level.
    const std::int64_t m_candidate = next_iteration_count(theta, std::int64_t{1} << 50);
    const std::int64_t m_accept = 2 * m_cur + 1;
    std::int64_t found = -1;
    for (std::int64_t mm = m_candidate; mm >= m_accept; --mm) {
      ++result.classical_ops;
      if (fits_single_period(theta, mm)) {
        found = mm;
        break;
      }
    }
    if (found >= 0) {
      if (!fits_single_period(theta, found)) {
        throw std::logic_error("iqae: selected level fails its containment predicate");
      }
      if (++levels > level_budget) {
        result.degenerate = true;
        result.interval = {p_lo, p_hi};
        break;
      }
      m_cur = found;
      k_cur = next_period(theta.lo, m_cur).k;
      good = 0;
      j = 0;
    } else {
      ++result.flagged_rounds;
    }
  }

  result.point_estimate = 0.5 * (result.interval.lo + result.interval.hi);
  result.n_oracle = oracle.ledger().oracle_queries - before.oracle_queries;
  result.total_shots = oracle.ledger().total_shots - before.total_shots;
  return result;
}

}  // namespace aae
