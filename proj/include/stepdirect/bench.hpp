// Copyright 2026 The StepDIRECT Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepdirect/objective.hpp"
#include "stepdirect/optimizer.hpp"

namespace stepdirect::bench {

// Exit statuses of the command-line harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidForest = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLoad = 3;

// Malformed configuration; the message names the offending field or line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An objective could not be constructed (missing or invalid forest file).
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectiveSpec {
  std::string name;
  std::string type;  // quantized_sphere | random_axis_stepwise | forest
  nlohmann::json params;
};

struct AlgorithmSpec {
  std::string name;
  RunConfig config;  // m_max and seed are filled in per run
  std::optional<std::size_t> budget;
};

struct ExperimentConfig {
  std::vector<ObjectiveSpec> objectives;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::uint64_t> seeds;
  std::size_t budget = 2000;
  std::string out_dir = "results";
  int precision = 4;
};

struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::size_t> budget;
};

// Config document schema:
//   objectives | objective: [{name?, type, ...generator parameters}]
//   algorithms: ["step-direct", {name?, variant?, budget?, epsilon?, lambda?,
//                epsilon_sigma?, split_rule?, local_frame?, parallel?,
//                local?: {tau, delta0, delta_min, delta_max, t_max, dir_count,
//                         strategy}}]
//   seeds: [..] or n_seeds: N, budget?, out_dir?, precision?
// Relative forest paths resolve against `base_dir`. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");

// Reads and parses a config file; syntax errors report line and column.
ExperimentConfig load_config(const std::string& path);

void apply(const Overrides& overrides, ExperimentConfig& config);

// "N" means seeds 0..N-1; "a,b,c" lists them explicitly. Throws ConfigError.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// Throws LoadError.
std::unique_ptr<StepwiseObjective> make_objective(const ObjectiveSpec& spec);

struct SeedOutcome {
  std::uint64_t seed = 0;
  double f_min = 0.0;
  double time_s = 0.0;
  std::size_t evaluations = 0;
  std::vector<TracePoint> trace;
  std::string trace_file;  // relative to out_dir
};

struct CellReport {
  std::string algorithm;
  std::string objective;
  double mean_obj = 0.0;
  double std_obj = 0.0;  // population standard deviation
  double mean_time_s = 0.0;
  double std_time_s = 0.0;
  std::vector<SeedOutcome> runs;
};

// Population mean and standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& values);

// Runs every (objective, algorithm, seed) triple. Objectives are all built
// before the first run.
std::vector<CellReport> run_experiment(const ExperimentConfig& config, std::ostream& log);

// Writes traces/<objective>/<algorithm>/seed_<s>.csv and summary.json.
void write_outputs(const ExperimentConfig& config, std::vector<CellReport>& reports);

nlohmann::json summary_json(const std::vector<CellReport>& reports);

// Plain-text and CSV renderings of the obj/time comparison table.
std::string compare_table(const ExperimentConfig& config, const std::vector<CellReport>& reports);
std::string compare_csv(const ExperimentConfig& config, const std::vector<CellReport>& reports);

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out,
            std::ostream& err);
int cmd_compare(const std::string& config_path, const Overrides& overrides, std::ostream& out,
                std::ostream& err);
int cmd_validate_forest(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace stepdirect::bench
