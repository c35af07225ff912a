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
#include <numbers>
#include <vector>

#include <doctest.h>

#include "aae/adaptive.hpp"
#include "aae/baselines.hpp"
#include "aae/oracle.hpp"
#include "aae/rng.hpp"
#include "aae/stats.hpp"

using namespace aae;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("regularized incomplete beta spot values") {
  // I_x(2,3) = x^2 (6 - 8x + 3x^2)
  CHECK(ibeta(2, 3, 0.5) == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(ibeta(2, 3, 0.3) == doctest::Approx(0.3483).epsilon(1e-12));
  CHECK(ibeta(4.5, 1.5, 0.7) == doctest::Approx(0.337293586081691).epsilon(1e-10));
  CHECK(ibeta(30, 70, 0.05) == doctest::Approx(6.2927190541107504e-16).epsilon(1e-6));
  CHECK(ibeta(0.5, 0.5, 0.99) == doctest::Approx(0.936231439141480).epsilon(1e-10));
  CHECK(ibeta(2, 3, 0.0) == 0.0);
  CHECK(ibeta(2, 3, 1.0) == 1.0);

  // inverse resolves to 1e-10
  for (double q : {0.025, 0.31, 0.5, 0.777, 0.975}) {
    const double x = ibeta_inv(6.0, 11.0, q);
    REQUIRE(ibeta(6.0, 11.0, x) == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("normal and chi-square quantiles") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-12));
  CHECK(chi_square_quantile_1df(0.95) == doctest::Approx(3.841458820694124).epsilon(1e-10));
}

TEST_CASE("clopper_pearson on pinned values") {
  const ProbInterval mid = clopper_pearson(5, 10, 0.05);
  CHECK(mid.lo == doctest::Approx(0.187086028447).epsilon(1e-6));
  CHECK(mid.hi == doctest::Approx(0.812913971553).epsilon(1e-6));
  CHECK(std::fabs(mid.lo - 0.18709) < 1e-4);
  CHECK(std::fabs(mid.hi - 0.81291) < 1e-4);

  const ProbInterval zero = clopper_pearson(0, 10, 0.05);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi == doctest::Approx(0.308497107819).epsilon(1e-6));

  const ProbInterval full = clopper_pearson(10, 10, 0.05);
  CHECK(full.lo == doctest::Approx(0.691502892181).epsilon(1e-6));
  CHECK(full.hi == 1.0);

  const ProbInterval skew = clopper_pearson(2, 50, 0.05);
  CHECK(skew.lo == doctest::Approx(0.004881433426).epsilon(1e-6));
  CHECK(skew.hi == doctest::Approx(0.137137625604).epsilon(1e-6));

  const ProbInterval large = clopper_pearson(97, 100, 0.05);
  CHECK(large.lo == doctest::Approx(0.914823947026).epsilon(1e-6));
  CHECK(large.hi == doctest::Approx(0.993770028462).epsilon(1e-6));
}

TEST_CASE("mlae at p = 0 pins the lower end to zero") {
  ExactOracle oracle({0.0, ""});
  MlaeConfig config;
  config.rounds = 6;
  const BaselineResult result = run_mlae(config, oracle);
  CHECK(result.interval.lo == 0.0);
  CHECK(result.point_estimate <= 1e-6);
  CHECK(result.interval.contains(0.0));
}

TEST_CASE("mlae point estimate agrees with an independent brute-force argmax") {
  const std::uint64_t seed = 7;
  const std::int64_t n_shots = 100;
  const std::int64_t rounds = 8;

  MlaeConfig config;
  config.rounds = rounds;
  config.n_shots = n_shots;
  SamplingOracle oracle({0.2, ""}, seed);
  const BaselineResult result = run_mlae(config, oracle);

  CHECK(std::fabs(result.point_estimate - 0.2) < 1e-3);
  CHECK(result.interval.contains(0.2));
  CHECK(result.n_oracle == n_shots * (1 + 2 + 4 + 8 + 16 + 32 + 64 + 128));

  // Brute force: replay the identical draw sequence, then scan 1e6 uniform
  // grid points with a likelihood written out here, independently.
  SamplingOracle replay({0.2, ""}, seed);
  std::vector<std::int64_t> schedule{0, 1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<std::int64_t> good;
  good.reserve(schedule.size());
  for (std::int64_t m : schedule) good.push_back(replay.measure(m, 1.0, n_shots).good_count);

  auto loglik = [&](double theta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const double s = std::sin(static_cast<double>(2 * schedule[i] + 1) * theta);
      const double q = s * s;
      const auto x = static_cast<double>(good[i]);
      if (x > 0.0) ll += x * std::log(std::max(q, 1e-300));
      if (x < static_cast<double>(n_shots)) {
        ll += (static_cast<double>(n_shots) - x) * std::log(std::max(1.0 - q, 1e-300));
      }
    }
    return ll;
  };

  const int grid = 1000000;
  double best_theta = 0.0;
  double best_ll = loglik(0.0);
  for (int i = 1; i < grid; ++i) {
    const double theta = (kPi / 2) * static_cast<double>(i) / (grid - 1);
    const double ll = loglik(theta);
    if (ll > best_ll) {
      best_ll = ll;
      best_theta = theta;
    }
  }
  const double brute_force_p = std::sin(best_theta) * std::sin(best_theta);
  CHECK(std::fabs(result.point_estimate - brute_force_p) < 1e-5);
  CHECK(std::isfinite(best_ll));
}

TEST_CASE("mlae log-likelihood stays finite on long schedules") {
  SamplingOracle oracle({0.31, ""}, 99);
  MlaeConfig config;
  config.rounds = 12;
  const BaselineResult result = run_mlae(config, oracle);
  CHECK(std::isfinite(result.interval.lo));
  CHECK(std::isfinite(result.interval.hi));
  CHECK(result.interval.contains(0.31));
  CHECK(result.classical_ops > 0);
}

TEST_CASE("iqae reaches the target width and covers the truth") {
  SamplingOracle oracle({0.2, ""}, 31);
  IqaeConfig config;
  config.epsilon = 1e-3;
  const BaselineResult result = run_iqae(config, oracle);
  CHECK_FALSE(result.degenerate);
  CHECK(result.interval.width() <= config.epsilon);
  CHECK(result.interval.contains(0.2));
}

TEST_CASE("iqae with the conservative interval also converges") {
  SamplingOracle oracle({0.34, ""}, 32);
  IqaeConfig config;
  config.epsilon = 1e-3;
  config.n_shots = 800;
  config.ci_method = CiMethod::chernoff_hoeffding;
  const BaselineResult result = run_iqae(config, oracle);
  CHECK_FALSE(result.degenerate);
  CHECK(result.interval.width() <= config.epsilon);
  CHECK(result.interval.contains(0.34));
}

TEST_CASE("iqae chernoff-hoeffding half-width reuses the shared formula") {
  // The level budget replaces the outer-round budget; evaluated side by side.
  for (std::int64_t budget : {5, 11, 23}) {
    for (std::int64_t j : {1, 2, 7, 40}) {
      const double from_shared = confidence_half_width(budget - 1, 0.05, j, 100);
      const double spelled_out = std::sqrt(
          std::log(kPi * kPi * static_cast<double>(budget) * static_cast<double>(j * j) /
                   (3.0 * 0.05)) /
          (2.0 * static_cast<double>(j) * 100.0));
      REQUIRE(from_shared == doctest::Approx(spelled_out).epsilon(1e-15));
    }
  }
}

TEST_CASE("findnextk acceptance arithmetic at the example interval") {
  // [0.50, 0.52] against 2m+1 = 3: branch 0 spans [0, pi/6] and
  // pi/6 = 0.5235... >= 0.52, so the interval fits at m = 1.
  CHECK(fits_single_period({0.50, 0.52}, 1));
  // [0.50, 0.55] straddles pi/6, so it does not.
  CHECK_FALSE(fits_single_period({0.50, 0.55}, 1));
}

TEST_CASE("classical cost blows up at the branch-boundary amplitude") {
  double ops_boundary = 0.0;
  double ops_generic = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    IqaeConfig config;
    config.epsilon = 1e-4;
    SamplingOracle boundary({0.25, ""}, seed);
    ops_boundary += static_cast<double>(run_iqae(config, boundary).classical_ops);
    SamplingOracle generic({0.2, ""}, seed);
    ops_generic += static_cast<double>(run_iqae(config, generic).classical_ops);
  }
  CHECK(ops_boundary > 2.0 * ops_generic);
}

TEST_CASE("all three estimators cover the truth on the exact oracle") {
  const double p = 0.2;

  ExactOracle for_adaptive({p, ""});
  AdaptiveConfig adaptive_config;
  adaptive_config.epsilon = 1e-3;
  adaptive_config.halve_input = false;
  CHECK(run_adaptive(adaptive_config, for_adaptive).p_interval.contains(p));

  ExactOracle for_mlae({p, ""});
  MlaeConfig mlae_config;
  mlae_config.rounds = 8;
  CHECK(run_mlae(mlae_config, for_mlae).interval.contains(p));

  ExactOracle for_iqae({p, ""});
  IqaeConfig iqae_config;
  iqae_config.epsilon = 1e-3;
  CHECK(run_iqae(iqae_config, for_iqae).interval.contains(p));
}
