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

#include "aae/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aae/adaptive.hpp"
#include "aae/baselines.hpp"
#include "aae/oracle.hpp"
#include "aae/rng.hpp"

namespace aae {

namespace {

constexpr std::string_view kSeedRule =
    "splitmix64(fnv1a64(method)^master_seed,eps_index,p_index)";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RunOutcome {
  bool failed{false};
  std::string reason;
  double width{0.0};
  bool contains{false};
  double n_oracle{0.0};
  double total_shots{0.0};
  double classical_ops{0.0};
  double mean_r{1.0};
  double min_r{1.0};
};

RunOutcome run_single(Method method, double p_true, double epsilon, const ExperimentConfig& config,
                      std::uint64_t seed) {
  RunOutcome outcome;
  AmplitudeProblem problem{p_true, ""};
  SamplingOracle sampled(problem, seed);
  ExactOracle exact(problem);
  Oracle& oracle = config.use_exact_oracle ? static_cast<Oracle&>(exact) : sampled;

  try {
    switch (method) {
      case Method::adaptive: {
        AdaptiveConfig run_config;
        run_config.epsilon = epsilon;
        run_config.alpha = config.alpha;
        run_config.k_ratio = config.k_ratio;
        run_config.n_shots = config.effective_n_shots();
        run_config.halve_input = false;  // scenario p values stay within [0, 1/2]
        const EstimationResult result = run_adaptive(run_config, oracle);
        outcome.width = result.p_interval.width();
        outcome.contains = result.p_interval.contains(p_true);
        outcome.n_oracle = static_cast<double>(result.n_oracle);
        outcome.total_shots = static_cast<double>(result.total_shots);
        outcome.classical_ops = static_cast<double>(result.wall_classical_ops);
        double sum_r = 0.0;
        double min_r = 1.0;
        for (const RoundState& round : result.rounds) {
          sum_r += round.adjustment;
          min_r = std::min(min_r, round.adjustment);
        }
        outcome.mean_r = sum_r / static_cast<double>(result.rounds.size());
        outcome.min_r = min_r;
        break;
      }
      case Method::mlae: {
        MlaeConfig run_config;
        run_config.rounds = mlae_rounds_for_epsilon(epsilon, config.effective_n_shots());
        run_config.n_shots = config.effective_n_shots();
        run_config.alpha = config.alpha;
        const BaselineResult result = run_mlae(run_config, oracle);
        if (result.degenerate) {
          outcome.failed = true;
          outcome.reason = "flat likelihood";
          break;
        }
        outcome.width = result.interval.width();
        outcome.contains = result.interval.contains(p_true);
        outcome.n_oracle = static_cast<double>(result.n_oracle);
        outcome.total_shots = static_cast<double>(result.total_shots);
        outcome.classical_ops = static_cast<double>(result.classical_ops);
        break;
      }
      case Method::iqae_cp:
      case Method::iqae_ch: {
        IqaeConfig run_config;
        run_config.epsilon = epsilon;
        run_config.alpha = config.alpha;
        run_config.n_shots = config.effective_n_shots();
        run_config.ci_method = method == Method::iqae_cp ? CiMethod::clopper_pearson
                                                         : CiMethod::chernoff_hoeffding;
        const BaselineResult result = run_iqae(run_config, oracle);
        if (result.degenerate) {
          outcome.failed = true;
          outcome.reason = "iqae gave up before reaching the target width";
          break;
        }
        outcome.width = result.interval.width();
        outcome.contains = result.interval.contains(p_true);
        outcome.n_oracle = static_cast<double>(result.n_oracle);
        outcome.total_shots = static_cast<double>(result.total_shots);
        outcome.classical_ops = static_cast<double>(result.classical_ops);
        break;
      }
    }
  } catch (const std::exception& e) {
    outcome.failed = true;
    outcome.reason = e.what();
  }
  return outcome;
}

}  // namespace

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::uniform_p: return "uniform_p";
    case Scenario::boundary_p_025: return "boundary_p_025";
    case Scenario::shots_800: return "shots_800";
  }
  return "unknown";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::adaptive: return "adaptive";
    case Method::mlae: return "mlae";
    case Method::iqae_cp: return "iqae_cp";
    case Method::iqae_ch: return "iqae_ch";
  }
  return "unknown";
}

Scenario scenario_from_string(std::string_view name) {
  if (name == "uniform_p") return Scenario::uniform_p;
  if (name == "boundary_p_025") return Scenario::boundary_p_025;
  if (name == "shots_800") return Scenario::shots_800;
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

Method method_from_string(std::string_view name) {
  if (name == "adaptive") return Method::adaptive;
  if (name == "mlae") return Method::mlae;
  if (name == "iqae_cp") return Method::iqae_cp;
  if (name == "iqae_ch") return Method::iqae_ch;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::vector<double> ExperimentConfig::effective_epsilons() const {
  if (!epsilons.empty()) return epsilons;
  return {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

std::vector<Method> ExperimentConfig::effective_methods() const {
  if (!methods.empty()) return methods;
  switch (scenario) {
    case Scenario::uniform_p: return {Method::adaptive, Method::mlae, Method::iqae_cp};
    case Scenario::boundary_p_025: return {Method::adaptive, Method::iqae_cp};
    case Scenario::shots_800: return {Method::adaptive, Method::iqae_cp, Method::iqae_ch};
  }
  return {Method::adaptive};
}

std::int64_t ExperimentConfig::effective_n_shots() const {
  if (n_shots > 0) return n_shots;
  return scenario == Scenario::shots_800 ? 800 : 100;
}

std::vector<double> ExperimentConfig::problem_values() const {
  std::vector<double> values(static_cast<std::size_t>(n_p_samples));
  if (scenario == Scenario::boundary_p_025) {
    std::fill(values.begin(), values.end(), 0.25);
    return values;
  }
  std::uint64_t state = splitmix64(master_seed ^ fnv1a64("p-grid"));
  for (double& p : values) {
    state = splitmix64(state);
    p = 0.5 * (static_cast<double>(state >> 11) * 0x1.0p-53);
  }
  return values;
}

std::int64_t mlae_rounds_for_epsilon(double epsilon, std::int64_t n_shots) {
  const double raw =
      std::ceil(std::log2(1.0 / (epsilon * std::sqrt(static_cast<double>(n_shots))))) + 1.0;
  return std::clamp<std::int64_t>(static_cast<std::int64_t>(raw), 3, 14);
}

std::vector<AggregateRow> run_experiment(const ExperimentConfig& config) {
  if (config.n_p_samples < 1) throw std::invalid_argument("n_p_samples must be >= 1");
  const std::vector<double> eps_grid = config.effective_epsilons();
  const std::vector<Method> methods = config.effective_methods();
  const std::vector<double> p_values = config.problem_values();

  std::vector<AggregateRow> rows;
  for (const Method method : methods) {
    const std::string method_name = to_string(method);
    for (std::size_t eps_index = 0; eps_index < eps_grid.size(); ++eps_index) {
      const double epsilon = eps_grid[eps_index];
      AggregateRow row;
      row.method = method_name;
      row.epsilon = epsilon;
      double sum_oracle = 0.0, sum_shots = 0.0, sum_ops = 0.0, sum_width = 0.0, sum_r = 0.0;
      std::int64_t covered = 0;
      double worst_r = 1.0;
      for (std::size_t p_index = 0; p_index < p_values.size(); ++p_index) {
        const std::uint64_t seed =
            derive_run_seed(config.master_seed, method_name, eps_index, p_index);
        const RunOutcome outcome = run_single(method, p_values[p_index], epsilon, config, seed);
        if (outcome.failed) {
          ++row.failures;
          continue;
        }
        ++row.run_count;
        covered += outcome.contains ? 1 : 0;
        sum_oracle += outcome.n_oracle;
        sum_shots += outcome.total_shots;
        sum_ops += outcome.classical_ops;
        sum_width += outcome.width;
        sum_r += outcome.mean_r;
        worst_r = std::min(worst_r, outcome.min_r);
      }
      if (row.run_count > 0) {
        const auto n = static_cast<double>(row.run_count);
        row.coverage_fraction = static_cast<double>(covered) / n;
        row.mean_n_oracle = sum_oracle / n;
        row.mean_total_shots = sum_shots / n;
        row.mean_classical_ops = sum_ops / n;
        row.mean_final_width = sum_width / n;
        row.mean_r = sum_r / n;
        row.worst_r = worst_r;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ReportMetadata report_metadata(const ExperimentConfig& config) {
  ReportMetadata meta;
  meta.master_seed = config.master_seed;
  meta.prng = std::string(kPrngName);
  meta.seed_rule = std::string(kSeedRule);

  std::ostringstream canonical;
  canonical << to_string(config.scenario);
  for (const double eps : config.effective_epsilons()) canonical << '|' << format_double(eps);
  for (const Method m : config.effective_methods()) canonical << '|' << to_string(m);
  canonical << '|' << config.n_p_samples << '|' << format_double(config.alpha) << '|'
            << config.k_ratio << '|' << config.effective_n_shots() << '|' << config.master_seed
            << '|' << (config.use_exact_oracle ? "exact" : "sampled");
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical.str())));
  meta.config_hash = buf;
  return meta;
}

SlopeFit fit_scaling(const std::vector<AggregateRow>& rows, std::string_view x_field,
                     std::string_view y_field) {
  if (x_field != "epsilon") {
    throw std::invalid_argument("unsupported x field: " + std::string(x_field));
  }
  std::set<std::string> methods;
  std::set<double> distinct_eps;
  std::vector<double> xs, ys;
  for (const AggregateRow& row : rows) {
    methods.insert(row.method);
    double y;
    if (y_field == "n_oracle") {
      y = row.mean_n_oracle;
    } else if (y_field == "classical_ops") {
      y = row.mean_classical_ops;
    } else if (y_field == "total_shots") {
      y = row.mean_total_shots;
    } else {
      throw std::invalid_argument("unsupported y field: " + std::string(y_field));
    }
    if (!(row.epsilon > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("fit_scaling needs positive epsilon and y values");
    }
    distinct_eps.insert(row.epsilon);
    xs.push_back(std::log10(row.epsilon));
    ys.push_back(std::log10(y));
  }
  if (methods.size() > 1) {
    throw std::invalid_argument("fit_scaling: rows mix methods; filter to one method first");
  }
  if (distinct_eps.size() < 3) {
    throw std::invalid_argument("fit_scaling needs at least 3 distinct epsilon values");
  }
  return fit_affine(xs, ys);
}

SlopeFit fit_affine(const std::vector<double>& basis, const std::vector<double>& y) {
  if (basis.size() != y.size() || basis.size() < 2) {
    throw std::invalid_argument("fit_affine: need matching inputs of size >= 2");
  }
  const auto n = static_cast<double>(basis.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sx += basis[i];
    sy += y[i];
    sxx += basis[i] * basis[i];
    sxy += basis[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::fabs(denom) < 1e-300) throw std::invalid_argument("fit_affine: degenerate basis");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double predicted = fit.slope * basis[i] + fit.intercept;
    ss_res += (y[i] - predicted) * (y[i] - predicted);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::string render_report_csv(const std::vector<AggregateRow>& rows, const ReportMetadata& meta) {
  std::ostringstream out;
  out << "# master_seed=" << meta.master_seed << '\n';
  out << "# prng=" << meta.prng << '\n';
  out << "# seed_rule=" << meta.seed_rule << '\n';
  out << "# config_hash=" << meta.config_hash << '\n';
  out << "method,epsilon,run_count,coverage_fraction,mean_n_oracle,mean_total_shots,"
         "mean_classical_ops,mean_final_width,mean_r,worst_r,failures\n";
  for (const AggregateRow& row : rows) {
    out << row.method << ',' << format_double(row.epsilon) << ',' << row.run_count << ','
        << format_double(row.coverage_fraction) << ',' << format_double(row.mean_n_oracle) << ','
        << format_double(row.mean_total_shots) << ',' << format_double(row.mean_classical_ops)
        << ',' << format_double(row.mean_final_width) << ',' << format_double(row.mean_r) << ','
        << format_double(row.worst_r) << ',' << row.failures << '\n';
  }
  return out.str();
}

std::string render_report_json(const std::vector<AggregateRow>& rows, const ReportMetadata& meta) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {{"master_seed", meta.master_seed},
                     {"prng", meta.prng},
                     {"seed_rule", meta.seed_rule},
                     {"config_hash", meta.config_hash}};
  doc["rows"] = nlohmann::ordered_json::array();
  for (const AggregateRow& row : rows) {
    doc["rows"].push_back({{"method", row.method},
                           {"epsilon", row.epsilon},
                           {"run_count", row.run_count},
                           {"coverage_fraction", row.coverage_fraction},
                           {"mean_n_oracle", row.mean_n_oracle},
                           {"mean_total_shots", row.mean_total_shots},
                           {"mean_classical_ops", row.mean_classical_ops},
                           {"mean_final_width", row.mean_final_width},
                           {"mean_r", row.mean_r},
                           {"worst_r", row.worst_r},
                           {"failures", row.failures}});
  }
  return doc.dump(2) + "\n";
}

void emit_report(const std::vector<AggregateRow>& rows, const ReportMetadata& meta,
                 std::string_view format, const std::string& path) {
  std::string payload;
  if (format == "csv") {
    payload = render_report_csv(rows, meta);
  } else if (format == "json") {
    payload = render_report_json(rows, meta);
  } else {
    throw std::invalid_argument("unknown report format: " + std::string(format));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << payload;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<AggregateRow> read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  std::vector<AggregateRow> rows;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    const auto doc = nlohmann::json::parse(content);
    for (const auto& item : doc.at("rows")) {
      AggregateRow row;
      row.method = item.at("method").get<std::string>();
      row.epsilon = item.at("epsilon").get<double>();
      row.run_count = item.at("run_count").get<std::int64_t>();
      row.coverage_fraction = item.at("coverage_fraction").get<double>();
      row.mean_n_oracle = item.at("mean_n_oracle").get<double>();
      row.mean_total_shots = item.at("mean_total_shots").get<double>();
      row.mean_classical_ops = item.at("mean_classical_ops").get<double>();
      row.mean_final_width = item.at("mean_final_width").get<double>();
      row.mean_r = item.at("mean_r").get<double>();
      row.worst_r = item.at("worst_r").get<double>();
      row.failures = item.at("failures").get<std::int64_t>();
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::istringstream lines(content);
  std::string line;
  bool header_seen = false;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    if (fields.size() != 11) throw std::runtime_error("malformed report row: " + line);
    AggregateRow row;
    row.method = fields[0];
    row.epsilon = std::stod(fields[1]);
    row.run_count = std::stoll(fields[2]);
    row.coverage_fraction = std::stod(fields[3]);
    row.mean_n_oracle = std::stod(fields[4]);
    row.mean_total_shots = std::stod(fields[5]);
    row.mean_classical_ops = std::stod(fields[6]);
    row.mean_final_width = std::stod(fields[7]);
    row.mean_r = std::stod(fields[8]);
    row.worst_r = std::stod(fields[9]);
    row.failures = std::stoll(fields[10]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aae
