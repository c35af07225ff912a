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

#include <chrono>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aae/adaptive.hpp"
#include "aae/baselines.hpp"
#include "aae/bench.hpp"
#include "aae/oracle.hpp"
#include "aae/rng.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitFailureThreshold = 3;

ordered_json interval_json(const aae::ProbInterval& iv) {
  return ordered_json::array({iv.lo, iv.hi});
}

std::unique_ptr<aae::Oracle> make_oracle(double p, std::uint64_t seed, bool exact) {
  aae::AmplitudeProblem problem{p, ""};
  if (exact) return std::make_unique<aae::ExactOracle>(problem);
  return std::make_unique<aae::SamplingOracle>(problem, seed);
}

int cmd_estimate(double p, double epsilon, double alpha, std::int64_t k_ratio,
                 std::int64_t shots, std::uint64_t seed, const std::string& method_name,
                 bool exact_oracle, bool assume_p_le_half) {
  const aae::Method method = aae::method_from_string(method_name);
  auto oracle = make_oracle(p, seed, exact_oracle);

  ordered_json out;
  out["method"] = method_name;
  out["p_true"] = p;
  out["epsilon"] = epsilon;
  out["alpha"] = alpha;
  out["n_shots"] = shots;
  out["seed"] = seed;
  out["oracle"] = exact_oracle ? "exact" : std::string(aae::kPrngName);

  switch (method) {
    case aae::Method::adaptive: {
      aae::AdaptiveConfig config;
      config.epsilon = epsilon;
      config.alpha = alpha;
      config.k_ratio = k_ratio;
      config.n_shots = shots;
      config.halve_input = !assume_p_le_half;
      out["K"] = k_ratio;
      out["halve_input"] = config.halve_input;
      const aae::EstimationResult result = aae::run_adaptive(config, *oracle);
      out["interval"] = interval_json(result.p_interval);
      out["width"] = result.p_interval.width();
      out["contains_true"] = result.p_interval.contains(p);
      out["n_oracle"] = result.n_oracle;
      out["total_shots"] = result.total_shots;
      out["classical_ops"] = result.wall_classical_ops;
      out["stopped_at"] = result.stopped_at;
      ordered_json rounds = ordered_json::array();
      for (const aae::RoundState& round : result.rounds) {
        rounds.push_back({{"t", round.step},
                          {"m", round.iterations},
                          {"r", round.adjustment},
                          {"k_hat", round.period_k},
                          {"shots", round.shots},
                          {"good", round.good},
                          {"batches", round.batches},
                          {"half_width", round.half_width},
                          {"ci", ordered_json::array({round.ci_raw.lo, round.ci_raw.hi})},
                          {"theta", ordered_json::array({round.theta_ci.lo, round.theta_ci.hi})}});
      }
      out["rounds"] = std::move(rounds);
      break;
    }
    case aae::Method::mlae: {
      aae::MlaeConfig config;
      config.rounds = aae::mlae_rounds_for_epsilon(epsilon, shots);
      config.n_shots = shots;
      config.alpha = alpha;
      out["schedule_rounds"] = config.rounds;
      const aae::BaselineResult result = aae::run_mlae(config, *oracle);
      out["interval"] = interval_json(result.interval);
      out["width"] = result.interval.width();
      out["contains_true"] = result.interval.contains(p);
      out["point_estimate"] = result.point_estimate;
      out["n_oracle"] = result.n_oracle;
      out["total_shots"] = result.total_shots;
      out["classical_ops"] = result.classical_ops;
      out["degenerate"] = result.degenerate;
      break;
    }
    case aae::Method::iqae_cp:
    case aae::Method::iqae_ch: {
      aae::IqaeConfig config;
      config.epsilon = epsilon;
      config.alpha = alpha;
      config.n_shots = shots;
      config.ci_method = method == aae::Method::iqae_cp ? aae::CiMethod::clopper_pearson
                                                        : aae::CiMethod::chernoff_hoeffding;
      const aae::BaselineResult result = aae::run_iqae(config, *oracle);
      out["interval"] = interval_json(result.interval);
      out["width"] = result.interval.width();
      out["contains_true"] = result.interval.contains(p);
      out["n_oracle"] = result.n_oracle;
      out["total_shots"] = result.total_shots;
      out["classical_ops"] = result.classical_ops;
      out["flagged_rounds"] = result.flagged_rounds;
      out["degenerate"] = result.degenerate;
      break;
    }
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_bench(const aae::ExperimentConfig& config, const std::string& out_path,
              const std::string& format) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<aae::AggregateRow> rows = aae::run_experiment(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  aae::emit_report(rows, aae::report_metadata(config), format, out_path);

  std::int64_t total_runs = 0;
  std::int64_t total_failures = 0;
  for (const aae::AggregateRow& row : rows) {
    total_runs += row.run_count + row.failures;
    total_failures += row.failures;
  }
  // Wall time goes to stderr, not into the report, so report bytes stay
  // reproducible.
  std::cerr << "wrote " << rows.size() << " rows to " << out_path << " (" << total_failures
            << '/' << total_runs << " failed runs, " << seconds << "s)\n";
  if (total_runs > 0 &&
      static_cast<double>(total_failures) > 0.10 * static_cast<double>(total_runs)) {
    return kExitFailureThreshold;
  }
  return kExitOk;
}

int cmd_fit(const std::string& in_path, const std::string& x_field, const std::string& y_field,
            const std::string& method_filter) {
  std::vector<aae::AggregateRow> rows = aae::read_report(in_path);
  if (!method_filter.empty()) {
    std::erase_if(rows, [&](const aae::AggregateRow& row) { return row.method != method_filter; });
  }
  if (rows.empty()) throw std::invalid_argument("no rows to fit (wrong --method?)");
  const aae::SlopeFit fit = aae::fit_scaling(rows, x_field, y_field);
  ordered_json out;
  out["method"] = rows.front().method;
  out["x"] = x_field;
  out["y"] = y_field;
  out["points"] = rows.size();
  out["slope"] = fit.slope;
  out["intercept"] = fit.intercept;
  out["r_squared"] = fit.r_squared;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive amplitude estimation: estimator, baselines, benchmark harness"};
  app.require_subcommand(1);

  // estimate
  double p = 0.0, epsilon = 1e-3, alpha = 0.05;
  std::int64_t k_ratio = 3, shots = 100;
  std::uint64_t seed = 0;
  std::string method = "adaptive";
  bool exact_oracle = false, assume_half = false;
  auto* estimate = app.add_subcommand("estimate", "Run one estimation and print a JSON result");
  estimate->add_option("--p", p, "true good-state probability")->required();
  estimate->add_option("--epsilon", epsilon, "target interval width");
  estimate->add_option("--alpha", alpha, "1 - confidence level");
  estimate->add_option("--K", k_ratio, "per-round width ratio (odd, >= 3)");
  estimate->add_option("--shots", shots, "batch size");
  estimate->add_option("--seed", seed, "oracle seed");
  estimate->add_option("--method", method, "adaptive|mlae|iqae_cp|iqae_ch");
  estimate->add_flag("--exact-oracle", exact_oracle, "use the noise-free oracle");
  estimate->add_flag("--assume-p-le-half", assume_half,
                     "caller guarantees p <= 1/2; skips the halving reduction");

  // bench
  std::string scenario_name = "uniform_p", out_path, format = "csv";
  std::vector<double> eps_list;
  std::vector<std::string> method_list;
  std::int64_t bench_runs = 100, bench_shots = 0;
  std::uint64_t bench_seed = 0;
  double bench_alpha = 0.05;
  std::int64_t bench_k = 3;
  bool bench_exact = false;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid and write a report");
  bench->add_option("--scenario", scenario_name, "uniform_p|boundary_p_025|shots_800")->required();
  bench->add_option("--out", out_path, "output path")->required();
  bench->add_option("--format", format, "csv|json");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--epsilons", eps_list, "epsilon grid override");
  bench->add_option("--methods", method_list, "methods override");
  bench->add_option("--runs", bench_runs, "problem draws per grid cell");
  bench->add_option("--shots", bench_shots, "batch size override");
  bench->add_option("--alpha", bench_alpha, "1 - confidence level");
  bench->add_option("--K", bench_k, "adaptive per-round width ratio");
  bench->add_flag("--exact-oracle", bench_exact, "use the noise-free oracle");

  // fit
  std::string in_path, x_field = "epsilon", y_field, fit_method;
  auto* fit = app.add_subcommand("fit", "Fit a log-log slope from a report");
  fit->add_option("--in", in_path, "report file (csv or json)")->required();
  fit->add_option("--x", x_field, "x field (epsilon)");
  fit->add_option("--y", y_field, "n_oracle|classical_ops")->required();
  fit->add_option("--method", fit_method, "restrict to one method");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (estimate->parsed()) {
      return cmd_estimate(p, epsilon, alpha, k_ratio, shots, seed, method, exact_oracle,
                          assume_half);
    }
    if (bench->parsed()) {
      aae::ExperimentConfig config;
      config.scenario = aae::scenario_from_string(scenario_name);
      config.epsilons = eps_list;
      config.n_p_samples = bench_runs;
      config.alpha = bench_alpha;
      config.k_ratio = bench_k;
      config.n_shots = bench_shots;
      for (const std::string& name : method_list) {
        config.methods.push_back(aae::method_from_string(name));
      }
      config.master_seed = bench_seed;
      config.use_exact_oracle = bench_exact;
      return cmd_bench(config, out_path, format);
    }
    if (fit->parsed()) {
      return cmd_fit(in_path, x_field, y_field, fit_method);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitConfigError;
}
