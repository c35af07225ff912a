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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "aae/bench.hpp"
#include "aae/rng.hpp"

using namespace aae;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<AggregateRow> synthetic_rows(double (*curve)(double)) {
  std::vector<AggregateRow> rows;
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    AggregateRow row;
    row.method = "adaptive";
    row.epsilon = eps;
    row.run_count = 1;
    row.mean_n_oracle = curve(eps);
    row.mean_classical_ops = curve(eps);
    row.mean_total_shots = curve(eps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("fit_scaling recovers an exact power law") {
  const auto rows = synthetic_rows(+[](double eps) { return 17.0 / eps; });
  const SlopeFit fit = fit_scaling(rows, "epsilon", "n_oracle");
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::pow(10.0, fit.intercept) == doctest::Approx(17.0).epsilon(1e-6));
}

TEST_CASE("fit_scaling sees a logarithm as nearly flat") {
  const auto rows = synthetic_rows(+[](double eps) { return std::log(1.0 / eps); });
  const SlopeFit fit = fit_scaling(rows, "epsilon", "classical_ops");
  CHECK(std::fabs(fit.slope) < 0.3);
}

TEST_CASE("fit_scaling rejects bad inputs") {
  auto rows = synthetic_rows(+[](double eps) { return 1.0 / eps; });
  rows.resize(2);
  CHECK_THROWS_AS(fit_scaling(rows, "epsilon", "n_oracle"), std::invalid_argument);

  auto mixed = synthetic_rows(+[](double eps) { return 1.0 / eps; });
  mixed[1].method = "mlae";
  CHECK_THROWS_AS(fit_scaling(mixed, "epsilon", "n_oracle"), std::invalid_argument);

  const auto ok = synthetic_rows(+[](double eps) { return 1.0 / eps; });
  CHECK_THROWS_AS(fit_scaling(ok, "epsilon", "bogus"), std::invalid_argument);
  CHECK_THROWS_AS(fit_scaling(ok, "bogus", "n_oracle"), std::invalid_argument);
}

TEST_CASE("fit_affine on an exact line") {
  const std::vector<double> basis{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{3.0, 5.0, 7.0, 9.0};
  const SlopeFit fit = fit_affine(basis, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mlae schedule length for a target width") {
  CHECK(mlae_rounds_for_epsilon(1e-3, 100) == 8);
  CHECK(mlae_rounds_for_epsilon(1e-8, 100) == 14);  // clamped
  CHECK(mlae_rounds_for_epsilon(0.2, 100) == 3);    // clamped
}

TEST_CASE("problem draws are deterministic and in range") {
  ExperimentConfig config;
  config.scenario = Scenario::uniform_p;
  config.n_p_samples = 200;
  config.master_seed = 77;
  const std::vector<double> a = config.problem_values();
  const std::vector<double> b = config.problem_values();
  REQUIRE(a == b);
  for (double p : a) {
    REQUIRE(p >= 0.0);
    REQUIRE(p < 0.5);
  }

  config.scenario = Scenario::boundary_p_025;
  for (double p : config.problem_values()) REQUIRE(p == 0.25);
}

TEST_CASE("single-run degenerate aggregate") {
  ExperimentConfig config;
  config.scenario = Scenario::boundary_p_025;
  config.epsilons = {1e-4};
  config.n_p_samples = 1;
  config.methods = {Method::adaptive};
  config.use_exact_oracle = true;
  config.master_seed = 5;
  const std::vector<AggregateRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].method == "adaptive");
  CHECK(rows[0].run_count == 1);
  CHECK(rows[0].failures == 0);
  CHECK(rows[0].coverage_fraction == 1.0);
  CHECK(rows[0].mean_final_width <= 1e-4);
  CHECK(rows[0].worst_r >= 0.25);
}

TEST_CASE("adaptive rows respect the width contract") {
  ExperimentConfig config;
  config.scenario = Scenario::uniform_p;
  config.epsilons = {1e-3, 1e-4};
  config.n_p_samples = 10;
  config.methods = {Method::adaptive};
  config.master_seed = 123;
  for (const AggregateRow& row : run_experiment(config)) {
    REQUIRE(row.failures == 0);
    REQUIRE(row.mean_final_width <= row.epsilon);
  }
}

TEST_CASE("reports are reproducible byte for byte") {
  ExperimentConfig config;
  config.scenario = Scenario::uniform_p;
  config.epsilons = {1e-3, 1e-4};
  config.n_p_samples = 3;
  config.methods = {Method::adaptive, Method::iqae_cp};
  config.master_seed = 99;

  const std::string first = render_report_csv(run_experiment(config), report_metadata(config));
  const std::string second = render_report_csv(run_experiment(config), report_metadata(config));
  CHECK(first == second);

  config.use_exact_oracle = true;
  const std::string exact_first =
      render_report_csv(run_experiment(config), report_metadata(config));
  const std::string exact_second =
      render_report_csv(run_experiment(config), report_metadata(config));
  CHECK(exact_first == exact_second);
  CHECK(exact_first != first);  // different oracle, different hash line and data
}

TEST_CASE("csv report round-trips through read_report") {
  ExperimentConfig config;
  config.scenario = Scenario::boundary_p_025;
  config.epsilons = {1e-3};
  config.n_p_samples = 2;
  config.methods = {Method::adaptive};
  config.master_seed = 4;
  const std::vector<AggregateRow> rows = run_experiment(config);

  const std::string path = temp_path("aae_report_test.csv");
  emit_report(rows, report_metadata(config), "csv", path);
  const std::vector<AggregateRow> parsed = read_report(path);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].method == rows[i].method);
    CHECK(parsed[i].epsilon == rows[i].epsilon);
    CHECK(parsed[i].run_count == rows[i].run_count);
    CHECK(parsed[i].coverage_fraction == rows[i].coverage_fraction);
    CHECK(parsed[i].mean_n_oracle == rows[i].mean_n_oracle);
    CHECK(parsed[i].mean_total_shots == rows[i].mean_total_shots);
    CHECK(parsed[i].mean_classical_ops == rows[i].mean_classical_ops);
    CHECK(parsed[i].mean_final_width == rows[i].mean_final_width);
    CHECK(parsed[i].mean_r == rows[i].mean_r);
    CHECK(parsed[i].worst_r == rows[i].worst_r);
    CHECK(parsed[i].failures == rows[i].failures);
  }
  std::filesystem::remove(path);
}

TEST_CASE("json report round-trips to equal rows") {
  ExperimentConfig config;
  config.scenario = Scenario::boundary_p_025;
  config.epsilons = {1e-3};
  config.n_p_samples = 2;
  config.methods = {Method::adaptive};
  config.master_seed = 4;
  const std::vector<AggregateRow> rows = run_experiment(config);

  const std::string path = temp_path("aae_report_test.json");
  emit_report(rows, report_metadata(config), "json", path);
  const std::vector<AggregateRow> parsed = read_report(path);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].method == rows[i].method);
    CHECK(parsed[i].epsilon == rows[i].epsilon);
    CHECK(parsed[i].mean_n_oracle == rows[i].mean_n_oracle);
    CHECK(parsed[i].worst_r == rows[i].worst_r);
  }
  std::filesystem::remove(path);
}

TEST_CASE("empty rows produce a header-only csv") {
  const std::string csv = render_report_csv({}, ReportMetadata{1, "x", "y", "z"});
  CHECK(csv.find("method,epsilon,run_count,coverage_fraction,mean_n_oracle,mean_total_shots,"
                 "mean_classical_ops,mean_final_width,mean_r,worst_r,failures\n") !=
        std::string::npos);
  // 4 metadata lines + header, nothing else
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("unknown scenario and method names are rejected") {
  CHECK_THROWS_AS(scenario_from_string("nope"), std::invalid_argument);
  CHECK_THROWS_AS(method_from_string("nope"), std::invalid_argument);
  CHECK(to_string(scenario_from_string("shots_800")) == "shots_800");
  CHECK(to_string(method_from_string("iqae_ch")) == "iqae_ch");
}

TEST_CASE("derived run seeds separate methods and grid cells") {
  const std::uint64_t a = derive_run_seed(1, "adaptive", 0, 0);
  CHECK(a == derive_run_seed(1, "adaptive", 0, 0));
  CHECK(a != derive_run_seed(1, "mlae", 0, 0));
  CHECK(a != derive_run_seed(1, "adaptive", 1, 0));
  CHECK(a != derive_run_seed(1, "adaptive", 0, 1));
  CHECK(a != derive_run_seed(2, "adaptive", 0, 0));
}
