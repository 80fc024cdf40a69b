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

#ifndef MLABC_EXPERIMENT_HPP
#define MLABC_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mlabc/allocation.hpp"
#include "mlabc/smc.hpp"
#include "mlabc/verify.hpp"

/**
 * \file
 * \brief Experiment configuration and the drivers behind the command-line
 * subcommands.
 *
 * Configuration files are INI text. Keys mirror the ExperimentConfig field
 * names; the grammar is documented in README.md.
 */

namespace mlabc {

enum class ModelKind { lgssm, svm };

ModelKind parse_model_kind(std::string_view name);
std::string_view to_string(ModelKind kind);

struct ScheduleSpec {
  double base_c = 2.0;
  int ratio_m = 2;
  int levels = 5;
};

struct ExperimentConfig {
  ModelKind model = ModelKind::lgssm;
  /// Horizon: lgssm data cover times 0..n, svm data times 1..n.
  std::size_t n = 10;
  ScheduleSpec schedule;
  std::vector<double> epsilon_targets{0.4, 0.2, 0.1, 0.05, 0.025, 0.0125};
  std::size_t replicates = 10;
  RateTriple rates;
  MutationKernel kernel;
  SweepPolicy sweeps;
  ResamplingScheme resampling = ResamplingScheme::multinomial;
  std::uint64_t seed = 20160101;
  std::optional<std::filesystem::path> data_path;
  std::filesystem::path output_dir = "results";
  /// 0 selects the number of logical cores.
  std::size_t workers = 0;

  // Linear Gaussian data generation.
  double sigma2_v = 0.25;
  double sigma2_w = 0.25;
  std::uint64_t data_seed = 7;

  // Stochastic volatility reference run.
  int reference_levels = 7;
  double reference_accuracy = 0.0;  // 0 selects half the smallest epsilon target
  std::uint64_t reference_seed = 424242;

  // Verification studies.
  std::vector<std::string> studies{"prop1", "prop2", "bias", "variance"};

  void validate() const;
};

/// Default configuration for a model (schedule, targets and kernel differ).
ExperimentConfig default_config(ModelKind model);

/// Parses INI text on top of `base`. Unknown sections or keys are errors.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

/**
 * Defaults for the model named by `model_override`, else by the file's
 * [experiment] model key, else lgssm; then the file's values on top.
 */
ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& path,
                                std::optional<ModelKind> model_override);

/// The model and the reference value of phi = w at the last site.
struct BenchmarkProblem {
  std::shared_ptr<const StateSpaceModel> model;
  Functional phi;
  double exact_reference = 0.0;
  /// '#' comment lines describing how the reference was obtained.
  std::vector<std::string> metadata;
};

/// Builds the data and the reference. For svm this runs the reference sampler.
BenchmarkProblem make_problem(const ExperimentConfig& config);

enum class Method { mlsmc, smc };
std::string_view to_string(Method method);

struct BenchmarkRecord {
  Method method = Method::mlsmc;
  ModelKind model = ModelKind::lgssm;
  std::size_t n = 0;
  double epsilon_target = 0.0;
  std::size_t replicate_index = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double exact_reference = 0.0;
  double squared_error = 0.0;
  double cost_units = 0.0;
  double wall_ms = 0.0;
};

/// Seed of one run; a pure function of the config seed and the run's position.
std::uint64_t run_seed(std::uint64_t base, std::size_t target_index, std::size_t replicate, Method method);

/// Records in (epsilon target, replicate, method) order.
std::vector<BenchmarkRecord> run_benchmark(const ExperimentConfig& config, const BenchmarkProblem& problem);

inline constexpr std::string_view kBenchmarkHeader =
    "method,model,n,epsilon_target,replicate_index,seed,estimate,exact_reference,squared_error,cost_units";
inline constexpr std::string_view kTimingHeader = "method,epsilon_target,replicate_index,wall_ms";

/// Deterministic CSV body: no wall-clock column.
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records,
                         const std::vector<std::string>& metadata);
void write_timing_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);
std::vector<BenchmarkRecord> read_benchmark_csv(std::istream& in);

/// Runs the benchmark and writes benchmark.csv and benchmark_timing.csv under output_dir.
std::vector<BenchmarkRecord> cmd_benchmark(const ExperimentConfig& config);

enum class StudyStatus { pass, fail, inconclusive };
std::string_view to_string(StudyStatus status);

struct StudyResult {
  RateFit fit;
  double band_lo = 0.0;
  double band_hi = 0.0;
  StudyStatus status = StudyStatus::fail;
  std::string summary;
};

StudyResult study_prop1(const ExperimentConfig& config);
StudyResult study_prop2(const ExperimentConfig& config);
StudyResult study_bias(const ExperimentConfig& config);
StudyResult study_variance(const ExperimentConfig& config);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitRuntime = 3;

/// Runs config.studies, writes rate_<study>.csv per study and a line per study to `log`.
/// Returns kExitOk when every study passes and kExitInconclusive otherwise.
int cmd_verify(const ExperimentConfig& config, std::ostream& log);

/// Writes the plan table for accuracy eps and the configured schedule and rates.
void cmd_allocate(std::ostream& out, double accuracy, const ScheduleSpec& schedule, const RateTriple& rates);

/// Simulates a data set (columns index,v) and returns the path written.
std::filesystem::path cmd_simulate_data(const ExperimentConfig& config);

}  // namespace mlabc

#endif  // MLABC_EXPERIMENT_HPP
