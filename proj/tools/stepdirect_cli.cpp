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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stepdirect/bench.hpp"

namespace bench = stepdirect::bench;

int main(int argc, char** argv) {
  CLI::App app{"Derivative-free optimisation of stepwise objectives"};
  app.require_subcommand(1);

  std::string config_path;
  std::string forest_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> seeds;
  std::optional<std::size_t> budget;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
    cmd->add_option("--out-dir", out_dir, "Output directory");
    cmd->add_option("--seeds", seeds, "Seed count N (seeds 0..N-1) or a list a,b,c");
    cmd->add_option("--budget", budget, "Evaluation budget m_max for every algorithm");
  };
  CLI::App* run = app.add_subcommand("run", "Run every algorithm on every objective and seed");
  add_overrides(run);
  CLI::App* compare = app.add_subcommand("compare", "Run and tabulate mean(±std) per algorithm");
  add_overrides(compare);
  CLI::App* validate = app.add_subcommand("validate-forest", "Check a forest-v1 JSON file");
  validate->add_option("path", forest_path, "Forest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bench::kExitUsage;
  }

  if (validate->parsed()) return bench::cmd_validate_forest(forest_path, std::cout, std::cerr);

  bench::Overrides overrides;
  overrides.out_dir = out_dir;
  overrides.budget = budget;
  if (seeds) {
    try {
      overrides.seeds = bench::parse_seeds(*seeds);
    } catch (const bench::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return bench::kExitUsage;
    }
  }
  if (run->parsed()) return bench::cmd_run(config_path, overrides, std::cout, std::cerr);
  return bench::cmd_compare(config_path, overrides, std::cout, std::cerr);
}
