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

#ifndef AAE_BENCH_HPP_
#define AAE_BENCH_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aae {

enum class Scenario { uniform_p, boundary_p_025, shots_800 };

enum class Method { adaptive, mlae, iqae_cp, iqae_ch };

std::string to_string(Scenario scenario);
std::string to_string(Method method);
Scenario scenario_from_string(std::string_view name);
Method method_from_string(std::string_view name);

struct ExperimentConfig {
  Scenario scenario{Scenario::uniform_p};
  std::vector<double> epsilons;     // empty -> 1e-3 .. 1e-8
  std::int64_t n_p_samples{100};    // problem draws (runs) per (method, epsilon)
  double alpha{0.05};
  std::int64_t k_ratio{3};
  std::int64_t n_shots{0};          // 0 -> scenario default (100, or 800 for shots_800)
  std::vector<Method> methods;      // empty -> scenario default
  std::uint64_t master_seed{0};
  bool use_exact_oracle{false};

  std::vector<double> effective_epsilons() const;
  std::vector<Method> effective_methods() const;
  std::int64_t effective_n_shots() const;
  /// The p values the runs estimate: 0.25 for the boundary scenario,
  /// otherwise n_p_samples uniform draws from (0, 0.5) seeded off
  /// master_seed (shared across methods and epsilons, as are the draws).
  std::vector<double> problem_values() const;
};

/// One aggregated cell of the experiment grid.
struct AggregateRow {
  std::string method;
  double epsilon{0.0};
  std::int64_t run_count{0};
  double coverage_fraction{0.0};
  double mean_n_oracle{0.0};
  double mean_total_shots{0.0};
  double mean_classical_ops{0.0};
  double mean_final_width{0.0};
  double mean_r{1.0};   // mean over runs of the per-run mean adjustment factor
  double worst_r{1.0};  // min over runs of the per-run minimum
  std::int64_t failures{0};
};

struct SlopeFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{0.0};
};

struct ReportMetadata {
  std::uint64_t master_seed{0};
  std::string prng;
  std::string seed_rule;
  std::string config_hash;
};

/// Schedule length handed to MLAE when the grid is keyed by a target width
/// instead: the smallest doubling schedule whose statistical resolution
/// reaches epsilon at the given batch size, clamped to [3, 14].
std::int64_t mlae_rounds_for_epsilon(double epsilon, std::int64_t n_shots);

/// Runs the full (method, epsilon, p-draw) grid sequentially and aggregates.
/// Deterministic for a fixed config: per-run seeds come from derive_run_seed,
/// never from scheduling. Per-run failures are excluded from the means and
/// counted in the row's failures column.
std::vector<AggregateRow> run_experiment(const ExperimentConfig& config);

ReportMetadata report_metadata(const ExperimentConfig& config);

/// Ordinary least squares on (log10 x, log10 y). x_field must be "epsilon";
/// y_field selects mean_n_oracle ("n_oracle"), mean_classical_ops
/// ("classical_ops") or mean_total_shots ("total_shots"). Needs >= 3 rows
/// with distinct epsilon.
SlopeFit fit_scaling(const std::vector<AggregateRow>& rows, std::string_view x_field,
                     std::string_view y_field);

/// Least squares of y against a*f(x)+b for a caller-supplied basis value
/// f(x); returns the fit and its r^2. Used for the loglog-shape check.
SlopeFit fit_affine(const std::vector<double>& basis, const std::vector<double>& y);

std::string render_report_csv(const std::vector<AggregateRow>& rows,
                              const ReportMetadata& meta);
std::string render_report_json(const std::vector<AggregateRow>& rows,
                               const ReportMetadata& meta);

/// Writes the report in "csv" or "json" format. I/O failures throw with the
/// path in the message.
void emit_report(const std::vector<AggregateRow>& rows, const ReportMetadata& meta,
                 std::string_view format, const std::string& path);

/// Reads rows back from a report file; the format is sniffed from the
/// content (JSON object vs. commented CSV).
std::vector<AggregateRow> read_report(const std::string& path);

}  // namespace aae

#endif  // AAE_BENCH_HPP_
