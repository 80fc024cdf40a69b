// Copyright 2026 The mlabc Authors
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

// mlabc: benchmark, verify, allocate and simulate-data subcommands.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mlabc/errors.hpp"
#include "mlabc/experiment.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> model;
  std::optional<std::size_t> n;
  std::optional<int> levels;
  std::optional<double> eps_base;
  std::optional<int> eps_ratio;
  std::optional<std::size_t> replicates;
  std::optional<std::string> study;
  std::optional<std::size_t> workers;
};

void add_common_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "INI experiment file");
  cmd.add_option("--seed", o.seed, "Master seed");
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_option("--model", o.model, "lgssm or svm")->check(CLI::IsMember({"lgssm", "svm"}));
  cmd.add_option("--n", o.n, "Data horizon");
  cmd.add_option("--levels", o.levels, "Top level L");
  cmd.add_option("--eps-base", o.eps_base, "Coarsest tolerance C");
  cmd.add_option("--eps-ratio", o.eps_ratio, "Tolerance ratio M");
  cmd.add_option("--replicates", o.replicates, "Replicates per epsilon target");
  cmd.add_option("--study", o.study, "prop1, prop2, bias or variance");
  cmd.add_option("--workers", o.workers, "Worker threads (0 = logical cores)");
}

mlabc::ExperimentConfig build_config(const Overrides& o) {
  std::optional<std::filesystem::path> path;
  if (o.config) {
    path = *o.config;
  }
  std::optional<mlabc::ModelKind> model;
  if (o.model) {
    model = mlabc::parse_model_kind(*o.model);
  }
  mlabc::ExperimentConfig config = mlabc::resolve_config(path, model);
  if (o.seed) {
    config.seed = *o.seed;
  }
  if (o.out) {
    config.output_dir = *o.out;
  }
  if (o.n) {
    config.n = *o.n;
  }
  if (o.levels) {
    config.schedule.levels = *o.levels;
  }
  if (o.eps_base) {
    config.schedule.base_c = *o.eps_base;
  }
  if (o.eps_ratio) {
    config.schedule.ratio_m = *o.eps_ratio;
  }
  if (o.replicates) {
    config.replicates = *o.replicates;
  }
  if (o.study) {
    config.studies = {*o.study};
  }
  if (o.workers) {
    config.workers = *o.workers;
  }
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel SMC for approximate Bayesian computation"};
  app.require_subcommand(1);

  Overrides o;
  double accuracy = 0.0;
  CLI::App* benchmark = app.add_subcommand("benchmark", "Cost-matched MLSMC vs SMC sweep");
  CLI::App* verify = app.add_subcommand("verify", "Empirical rate studies");
  CLI::App* allocate = app.add_subcommand("allocate", "Print the per-level sample sizes");
  CLI::App* simulate = app.add_subcommand("simulate-data", "Simulate a data set");
  for (CLI::App* cmd : {benchmark, verify, allocate, simulate}) {
    add_common_flags(*cmd, o);
  }
  allocate->add_option("--accuracy", accuracy, "Target accuracy eps")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? mlabc::kExitOk : mlabc::kExitUsage;
  }

  mlabc::ExperimentConfig config;
  try {
    config = build_config(o);
  } catch (const std::exception& error) {
    std::cerr << "mlabc: " << error.what() << '\n';
    return mlabc::kExitUsage;
  }

  try {
    if (*benchmark) {
      const auto records = mlabc::cmd_benchmark(config);
      std::cerr << "wrote " << records.size() << " rows to " << (config.output_dir / "benchmark.csv").string()
                << '\n';
      return mlabc::kExitOk;
    }
    if (*verify) {
      return mlabc::cmd_verify(config, std::cout);
    }
    if (*allocate) {
      mlabc::cmd_allocate(std::cout, accuracy, config.schedule, config.rates);
      return mlabc::kExitOk;
    }
    const auto path = mlabc::cmd_simulate_data(config);
    std::cerr << "wrote " << path.string() << '\n';
    return mlabc::kExitOk;
  } catch (const mlabc::ParameterError& error) {
    std::cerr << "mlabc: " << error.what() << '\n';
    return mlabc::kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "mlabc: " << error.what() << '\n';
    return mlabc::kExitRuntime;
  }
}
