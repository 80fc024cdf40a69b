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

#include "mlabc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mlabc/csv.hpp"
#include "mlabc/errors.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/returns_csv.hpp"
#include "mlabc/stochastic_volatility.hpp"
#include "mlabc/toy_model.hpp"

namespace mlabc {

namespace {

namespace pt = boost::property_tree;

std::uint64_t parse_u64(std::string_view text, std::string_view key) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("config: " + std::string(key) + " must be a non-negative integer, got '" +
                         std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view key) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("config: " + std::string(key) + " must be an integer, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::string_view key) {
  try {
    return parse_double(text);
  } catch (const InputError&) {
    throw ParameterError("config: " + std::string(key) + " must be a number, got '" + std::string(text) + "'");
  }
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start));
    if (!piece.empty()) {
      items.push_back(piece);
    }
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return items;
}

ParamUpdate parse_param_update(std::string_view name) {
  if (name == "none") {
    return ParamUpdate::none;
  }
  if (name == "random_walk") {
    return ParamUpdate::random_walk;
  }
  throw ParameterError("config: param_update must be none or random_walk, got '" + std::string(name) + "'");
}

/// Runs fn(0..count-1) on up to `workers` threads; rethrows the first failure.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) {
    workers = std::max(1U, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(count);
        }
      }
    });
  }
  for (auto& thread : pool) {
    thread.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

SmcOptions smc_options(const ExperimentConfig& config) {
  SmcOptions options;
  options.kernel = config.kernel;
  options.sweeps = config.sweeps;
  options.resampling = config.resampling;
  return options;
}

std::string kernel_label(const ExperimentConfig& config) {
  std::string label(to_string(config.kernel.kind));
  if (config.kernel.param_update == ParamUpdate::random_walk) {
    label += "+random_walk";
  }
  return label;
}

std::vector<double> read_series_column(const std::filesystem::path& path) {
  const CsvTable table = read_csv_file(path);
  if (std::find(table.header.begin(), table.header.end(), "v") != table.header.end()) {
    return table.numeric_column("v");
  }
  return load_returns_csv(path);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::shared_ptr<const LinearGaussianSsm> lgssm_for(const ExperimentConfig& config, std::size_t n) {
  RngStream stream(config.data_seed, 0);
  SimulatedPath path = simulate_lgssm(n, config.sigma2_v, config.sigma2_w, stream);
  return std::make_shared<const LinearGaussianSsm>(std::move(path.data), config.sigma2_v, config.sigma2_w);
}

StudyStatus classify(const RateFit& fit, double lo, double hi, double min_r_squared) {
  if (fit.inconclusive) {
    return StudyStatus::inconclusive;
  }
  return (fit.slope >= lo && fit.slope <= hi && fit.r_squared >= min_r_squared) ? StudyStatus::pass
                                                                                 : StudyStatus::fail;
}

std::string describe(const StudyResult& result) {
  std::ostringstream text;
  text << result.fit.study << ": slope " << format_double(result.fit.slope) << " (band ["
       << format_double(result.band_lo) << ", " << format_double(result.band_hi) << "]), r^2 "
       << format_double(result.fit.r_squared);
  return text.str();
}

}  // namespace

ModelKind parse_model_kind(std::string_view name) {
  if (name == "lgssm") {
    return ModelKind::lgssm;
  }
  if (name == "svm") {
    return ModelKind::svm;
  }
  throw ParameterError("model must be lgssm or svm, got '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) { return kind == ModelKind::lgssm ? "lgssm" : "svm"; }

std::string_view to_string(Method method) { return method == Method::mlsmc ? "mlsmc" : "smc"; }

std::string_view to_string(StudyStatus status) {
  switch (status) {
    case StudyStatus::pass:
      return "pass";
    case StudyStatus::fail:
      return "fail";
    case StudyStatus::inconclusive:
      return "inconclusive";
  }
  return "fail";
}

void ExperimentConfig::validate() const {
  if (n < 1) {
    throw ParameterError("config: n must be >= 1");
  }
  if (replicates < 1) {
    throw ParameterError("config: replicates must be >= 1");
  }
  if (epsilon_targets.empty()) {
    throw ParameterError("config: epsilon_targets must not be empty");
  }
  for (const double eps : epsilon_targets) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw ParameterError("config: epsilon_targets must all be > 0");
    }
  }
  if (schedule.levels < 1) {
    throw ParameterError("config: levels must be >= 1");
  }
  if (!(schedule.base_c > 0.0)) {
    throw ParameterError("config: base_c must be > 0");
  }
  if (schedule.ratio_m < 2) {
    throw ParameterError("config: ratio_m must be >= 2");
  }
  if (!(sigma2_v > 0.0) || !(sigma2_w > 0.0)) {
    throw ParameterError("config: sigma2_v and sigma2_w must be > 0");
  }
  if (sweeps.sweeps < 1) {
    throw ParameterError("config: sweeps_per_level must be >= 1");
  }
  if (reference_levels < 1) {
    throw ParameterError("config: reference_levels must be >= 1");
  }
  if (reference_accuracy < 0.0) {
    throw ParameterError("config: reference_accuracy must be >= 0");
  }
  rates.validate();
  for (const auto& study : studies) {
    if (study != "prop1" && study != "prop2" && study != "bias" && study != "variance") {
      throw ParameterError("config: unknown study '" + study + "' (expected prop1, prop2, bias or variance)");
    }
  }
  if (model == ModelKind::lgssm && kernel.param_update == ParamUpdate::random_walk) {
    throw ParameterError("config: param_update random_walk needs model svm");
  }
}

ExperimentConfig default_config(ModelKind model) {
  ExperimentConfig config;
  config.model = model;
  if (model == ModelKind::svm) {
    config.n = kDefaultSvmLength;
    config.schedule = {64.0, 2, 5};
    config.epsilon_targets = {1024.0, 512.0, 256.0, 128.0, 64.0, 32.0};
    config.kernel.param_update = ParamUpdate::random_walk;
  }
  return config;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& error) {
    throw ParameterError(std::string("config: ") + error.what());
  }
  ExperimentConfig& c = base;
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ParameterError("config: key '" + section + "' must appear inside a section");
    }
    for (const auto& [key, node] : entries) {
      const std::string value = trim(node.data());
      const std::string name = section + "." + key;
      if (section == "experiment") {
        if (key == "model") {
          c.model = parse_model_kind(value);
        } else if (key == "n") {
          c.n = parse_u64(value, name);
        } else if (key == "epsilon_targets") {
          c.epsilon_targets.clear();
          for (const auto& item : split_list(value)) {
            c.epsilon_targets.push_back(parse_real(item, name));
          }
        } else if (key == "replicates") {
          c.replicates = parse_u64(value, name);
        } else if (key == "seed") {
          c.seed = parse_u64(value, name);
        } else if (key == "data_path") {
          c.data_path = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
        } else if (key == "output_dir") {
          c.output_dir = value;
        } else if (key == "workers") {
          c.workers = parse_u64(value, name);
        } else if (key == "studies") {
          c.studies = split_list(value);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else if (section == "schedule") {
        if (key == "base_c") {
          c.schedule.base_c = parse_real(value, name);
        } else if (key == "ratio_m") {
          c.schedule.ratio_m = parse_int(value, name);
        } else if (key == "levels") {
          c.schedule.levels = parse_int(value, name);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else if (section == "rates") {
        if (key == "alpha") {
          c.rates.alpha = parse_real(value, name);
        } else if (key == "beta") {
          c.rates.beta = parse_real(value, name);
        } else if (key == "zeta") {
          c.rates.zeta = parse_real(value, name);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else if (section == "kernel") {
        if (key == "kind") {
          c.kernel.kind = parse_kernel_kind(value);
        } else if (key == "param_update") {
          c.kernel.param_update = parse_param_update(value);
        } else if (key == "step_alpha") {
          c.kernel.steps.alpha = parse_real(value, name);
        } else if (key == "step_beta") {
          c.kernel.steps.beta = parse_real(value, name);
        } else if (key == "step_log_sigma2") {
          c.kernel.steps.log_sigma2 = parse_real(value, name);
        } else if (key == "sweeps_mode") {
          c.sweeps.mode = parse_sweeps_mode(value);
        } else if (key == "sweeps_per_level") {
          c.sweeps.sweeps = parse_int(value, name);
        } else if (key == "resampling") {
          c.resampling = parse_resampling(value);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else if (section == "lgssm") {
        if (key == "sigma2_v") {
          c.sigma2_v = parse_real(value, name);
        } else if (key == "sigma2_w") {
          c.sigma2_w = parse_real(value, name);
        } else if (key == "data_seed") {
          c.data_seed = parse_u64(value, name);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else if (section == "svm") {
        if (key == "reference_levels") {
          c.reference_levels = parse_int(value, name);
        } else if (key == "reference_accuracy") {
          c.reference_accuracy = parse_real(value, name);
        } else if (key == "reference_seed") {
          c.reference_seed = parse_u64(value, name);
        } else {
          throw ParameterError("config: unknown key '" + name + "'");
        }
      } else {
        throw ParameterError("config: unknown section '[" + section + "]'");
      }
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw ParameterError("config: cannot open " + path.string());
  }
  return parse_config(in, std::move(base));
}

ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& path,
                                std::optional<ModelKind> model_override) {
  ModelKind model = ModelKind::lgssm;
  if (model_override) {
    model = *model_override;
  } else if (path) {
    model = load_config(*path, ExperimentConfig{}).model;
  }
  ExperimentConfig config = default_config(model);
  if (path) {
    config = load_config(*path, config);
  }
  config.model = model;
  return config;
}

BenchmarkProblem make_problem(const ExperimentConfig& config) {
  BenchmarkProblem problem;
  if (config.model == ModelKind::lgssm) {
    std::shared_ptr<const LinearGaussianSsm> model;
    if (config.data_path) {
      model = std::make_shared<const LinearGaussianSsm>(read_series_column(*config.data_path), config.sigma2_v,
                                                        config.sigma2_w);
      problem.metadata.push_back("data_path=" + config.data_path->string());
    } else {
      model = lgssm_for(config, config.n);
      problem.metadata.push_back("data_seed=" + std::to_string(config.data_seed));
    }
    problem.exact_reference = kalman_posterior_mean(*model, model->horizon());
    problem.metadata.push_back("sigma2_v=" + format_double(config.sigma2_v));
    problem.metadata.push_back("sigma2_w=" + format_double(config.sigma2_w));
    problem.metadata.push_back("reference=kalman_filter_mean");
    problem.model = model;
  } else {
    std::vector<double> returns;
    if (config.data_path) {
      returns = read_series_column(*config.data_path);
      problem.metadata.push_back("data_path=" + config.data_path->string());
    } else {
      returns = default_svm_series(config.n);
      problem.metadata.push_back("data=bundled_synthetic_series");
    }
    problem.model = std::make_shared<const StochasticVolatilityModel>(std::move(returns));
  }
  const std::size_t last = problem.model->num_sites() - 1;
  problem.phi = [last](const ParticleState& state) { return state.latent[last]; };

  if (config.model == ModelKind::svm) {
    const double accuracy =
        config.reference_accuracy > 0.0
            ? config.reference_accuracy
            : 0.5 * *std::min_element(config.epsilon_targets.begin(), config.epsilon_targets.end());
    const AbcTarget target(problem.model, ToleranceSchedule::geometric(config.schedule.base_c,
                                                                       config.schedule.ratio_m,
                                                                       config.reference_levels));
    const AllocationPlan plan = allocate_samples(accuracy, target.schedule(), config.rates);
    RngStream stream(config.reference_seed, 0);
    const MlsmcEstimate reference = run_mlsmc(target, problem.phi, plan, smc_options(config), stream);
    problem.exact_reference = reference.value;
    problem.metadata.push_back("reference=mlsmc");
    problem.metadata.push_back("reference_levels=" + std::to_string(config.reference_levels));
    problem.metadata.push_back("reference_accuracy=" + format_double(accuracy));
    problem.metadata.push_back("reference_seed=" + std::to_string(config.reference_seed));
    problem.metadata.push_back("reference_cost_units=" + format_double(reference.total_cost_units));
  }
  problem.metadata.push_back("exact_reference=" + format_double(problem.exact_reference));
  return problem;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t target_index, std::size_t replicate, Method method) {
  const std::uint64_t salt = (static_cast<std::uint64_t>(target_index) << 40U) ^
                             (static_cast<std::uint64_t>(replicate) << 1U) ^
                             static_cast<std::uint64_t>(method == Method::smc ? 1U : 0U);
  return mix_seed(base, salt);
}

std::vector<BenchmarkRecord> run_benchmark(const ExperimentConfig& config, const BenchmarkProblem& problem) {
  config.validate();
  const AbcTarget target(problem.model, ToleranceSchedule::geometric(config.schedule.base_c, config.schedule.ratio_m,
                                                                     config.schedule.levels));
  const SmcOptions options = smc_options(config);
  const std::size_t reps = config.replicates;
  std::vector<BenchmarkRecord> records;

  const auto make_record = [&](Method method, std::size_t e, std::size_t r, std::uint64_t seed,
                               const MlsmcEstimate& estimate, double wall_ms) {
    BenchmarkRecord record;
    record.method = method;
    record.model = config.model;
    record.n = config.n;
    record.epsilon_target = config.epsilon_targets[e];
    record.replicate_index = r;
    record.seed = seed;
    record.estimate = estimate.value;
    record.exact_reference = problem.exact_reference;
    const double error = estimate.value - problem.exact_reference;
    record.squared_error = error * error;
    record.cost_units = estimate.total_cost_units;
    record.wall_ms = wall_ms;
    return record;
  };

  for (std::size_t e = 0; e < config.epsilon_targets.size(); ++e) {
    const AllocationPlan plan = allocate_samples(config.epsilon_targets[e], target.schedule(), config.rates);

    std::vector<MlsmcEstimate> multilevel(reps);
    std::vector<double> multilevel_ms(reps);
    parallel_for(reps, config.workers, [&](std::size_t r) {
      const auto start = std::chrono::steady_clock::now();
      RngStream stream(run_seed(config.seed, e, r, Method::mlsmc), 0);
      multilevel[r] = run_mlsmc(target, problem.phi, plan, options, stream);
      multilevel_ms[r] = seconds_since(start);
    });

    double mean_cost = 0.0;
    std::vector<double> mean_units;
    for (const MlsmcEstimate& estimate : multilevel) {
      const std::vector<double> units = baseline_unit_costs(estimate);
      mean_units.resize(units.size(), 0.0);
      for (std::size_t l = 0; l < units.size(); ++l) {
        mean_units[l] += units[l] / static_cast<double>(reps);
      }
      mean_cost += estimate.total_cost_units / static_cast<double>(reps);
    }
    const std::size_t n_fixed = match_baseline_size(mean_cost, mean_units);

    std::vector<MlsmcEstimate> baseline(reps);
    std::vector<double> baseline_ms(reps);
    parallel_for(reps, config.workers, [&](std::size_t r) {
      const auto start = std::chrono::steady_clock::now();
      RngStream stream(run_seed(config.seed, e, r, Method::smc), 0);
      baseline[r] = run_smc_baseline(target, problem.phi, n_fixed, options, stream);
      baseline_ms[r] = seconds_since(start);
    });

    for (std::size_t r = 0; r < reps; ++r) {
      records.push_back(make_record(Method::mlsmc, e, r, run_seed(config.seed, e, r, Method::mlsmc), multilevel[r],
                                    multilevel_ms[r]));
      records.push_back(
          make_record(Method::smc, e, r, run_seed(config.seed, e, r, Method::smc), baseline[r], baseline_ms[r]));
    }
  }
  return records;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records,
                         const std::vector<std::string>& metadata) {
  for (const auto& line : metadata) {
    out << "# " << line << '\n';
  }
  out << kBenchmarkHeader << '\n';
  for (const BenchmarkRecord& r : records) {
    out << to_string(r.method) << ',' << to_string(r.model) << ',' << r.n << ',' << format_double(r.epsilon_target)
        << ',' << r.replicate_index << ',' << r.seed << ',' << format_double(r.estimate) << ','
        << format_double(r.exact_reference) << ',' << format_double(r.squared_error) << ','
        << format_double(r.cost_units) << '\n';
  }
}

void write_timing_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << kTimingHeader << '\n';
  for (const BenchmarkRecord& r : records) {
    out << to_string(r.method) << ',' << format_double(r.epsilon_target) << ',' << r.replicate_index << ','
        << format_double(r.wall_ms) << '\n';
  }
}

std::vector<BenchmarkRecord> read_benchmark_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const auto col = [&](std::string_view name) { return table.column(name); };
  const std::size_t c_method = col("method");
  const std::size_t c_model = col("model");
  const std::size_t c_n = col("n");
  const std::size_t c_eps = col("epsilon_target");
  const std::size_t c_rep = col("replicate_index");
  const std::size_t c_seed = col("seed");
  const std::size_t c_est = col("estimate");
  const std::size_t c_ref = col("exact_reference");
  const std::size_t c_sq = col("squared_error");
  const std::size_t c_cost = col("cost_units");
  std::vector<BenchmarkRecord> records;
  for (const auto& row : table.rows) {
    BenchmarkRecord r;
    if (row[c_method] == "mlsmc") {
      r.method = Method::mlsmc;
    } else if (row[c_method] == "smc") {
      r.method = Method::smc;
    } else {
      throw InputError("benchmark csv: unknown method '" + row[c_method] + "'");
    }
    r.model = parse_model_kind(row[c_model]);
    r.n = parse_u64(row[c_n], "n");
    r.epsilon_target = parse_double(row[c_eps]);
    r.replicate_index = parse_u64(row[c_rep], "replicate_index");
    r.seed = parse_u64(row[c_seed], "seed");
    r.estimate = parse_double(row[c_est]);
    r.exact_reference = parse_double(row[c_ref]);
    r.squared_error = parse_double(row[c_sq]);
    r.cost_units = parse_double(row[c_cost]);
    records.push_back(r);
  }
  return records;
}

std::vector<BenchmarkRecord> cmd_benchmark(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  const auto csv_path = config.output_dir / "benchmark.csv";
  const auto timing_path = config.output_dir / "benchmark_timing.csv";
  std::ofstream csv(csv_path);
  std::ofstream timing(timing_path);
  if (!csv || !timing) {
    throw InputError("benchmark: cannot write under " + config.output_dir.string());
  }

  BenchmarkProblem problem;
  try {
    problem = make_problem(config);
  } catch (const InitializationError& error) {
    throw InitializationError(std::string("benchmark reference run: ") + error.what());
  }
  std::vector<std::string> metadata = problem.metadata;
  metadata.push_back("kernel=" + kernel_label(config));
  metadata.push_back("sweeps_mode=" + std::string(to_string(config.sweeps.mode)));
  metadata.push_back("sweeps_per_level=" + std::to_string(config.sweeps.sweeps));
  metadata.push_back("resampling=" +
                     std::string(config.resampling == ResamplingScheme::multinomial ? "multinomial" : "systematic"));
  metadata.push_back("schedule=" + format_double(config.schedule.base_c) + "," +
                     std::to_string(config.schedule.ratio_m) + "," + std::to_string(config.schedule.levels));
  metadata.push_back("rates=" + format_double(config.rates.alpha) + "," + format_double(config.rates.beta) + "," +
                     format_double(config.rates.zeta));
  metadata.push_back("seed=" + std::to_string(config.seed));

  std::vector<BenchmarkRecord> records;
  try {
    records = run_benchmark(config, problem);
  } catch (const InitializationError& error) {
    throw InitializationError(std::string("benchmark: ") + error.what());
  }
  write_benchmark_csv(csv, records, metadata);
  write_timing_csv(timing, records);
  return records;
}

StudyResult study_prop1(const ExperimentConfig& /*config*/) {
  const auto toy = std::make_shared<const CompactToyModel>();
  const AbcTarget target(toy, ToleranceSchedule::geometric(1.0, 2, 8));
  StudyResult result;
  result.fit = verify_prop1(target);
  result.band_lo = 1.8;
  result.band_hi = 2.2;
  result.status = classify(result.fit, result.band_lo, result.band_hi, 0.95);
  result.summary = describe(result);
  return result;
}

StudyResult study_prop2(const ExperimentConfig& config) {
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  Prop2Options options;
  options.replicates = 200;
  options.seed = config.seed;
  const auto model10 = lgssm_for(config, 10);
  const auto model20 = lgssm_for(config, 20);
  StudyResult result;
  result.fit = verify_prop2(*model10, eps, options);
  result.band_lo = -1.2;
  result.band_hi = -0.8;
  const std::vector<double> costs20 = gibbs_sweep_costs(*model20, eps, options);
  double sum10 = 0.0;
  double sum20 = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    sum10 += result.fit.points[i].quantity;
    sum20 += costs20[i];
  }
  const double ratio = sum20 / sum10;
  result.status = classify(result.fit, result.band_lo, result.band_hi, 0.0);
  if (result.status == StudyStatus::pass && std::abs(ratio - 2.0) > 0.5) {
    result.status = StudyStatus::fail;
  }
  result.summary = describe(result) + "; cost ratio n=20/n=10 " + format_double(ratio) + " (band [1.5, 2.5])";
  return result;
}

StudyResult study_bias(const ExperimentConfig& config) {
  const auto model = lgssm_for(config, 5);
  const std::vector<double> smoothed = kalman_smoothed_means(*model);
  const double exact = std::accumulate(smoothed.begin(), smoothed.end(), 0.0);
  const std::size_t sites = model->num_sites();
  const Functional phi = [sites](const ParticleState& state) {
    return std::accumulate(state.latent.begin(), state.latent.begin() + static_cast<std::ptrdiff_t>(sites), 0.0);
  };
  const AbcTarget target(model, ToleranceSchedule::geometric(1.0, 2, 5));
  BiasRateOptions options;
  options.big_n = 100'000;
  options.seed = config.seed;
  options.smc.sweeps.sweeps = 5;
  StudyResult result;
  result.fit = estimate_bias_rate(target, phi, exact, options);
  result.band_lo = 0.6;
  result.band_hi = 1.4;
  result.status = classify(result.fit, result.band_lo, result.band_hi, 0.0);
  result.summary = describe(result);
  return result;
}

StudyResult study_variance(const ExperimentConfig& config) {
  const auto toy = std::make_shared<const CompactToyModel>();
  const AbcTarget target(toy, ToleranceSchedule::geometric(1.0, 2, 5));
  const AllocationPlan plan = allocate_samples(0.02, target.schedule(), RateTriple{});
  const Functional phi = [](const ParticleState& state) { return state.latent[0]; };
  VarianceRateOptions options;
  options.replicates = 100;
  options.seed = config.seed;
  StudyResult result;
  result.fit = estimate_variance_rate(target, phi, plan, options);
  result.band_lo = 0.5;
  result.band_hi = std::numeric_limits<double>::infinity();
  result.status = classify(result.fit, result.band_lo, result.band_hi, 0.0);
  result.summary = describe(result);
  return result;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  bool all_pass = true;
  for (const std::string& study : config.studies) {
    StudyResult result;
    if (study == "prop1") {
      result = study_prop1(config);
    } else if (study == "prop2") {
      result = study_prop2(config);
    } else if (study == "bias") {
      result = study_bias(config);
    } else {
      result = study_variance(config);
    }
    const auto path = config.output_dir / ("rate_" + study + ".csv");
    std::ofstream out(path);
    if (!out) {
      throw InputError("verify: cannot write " + path.string());
    }
    out << "# status=" << to_string(result.status) << '\n';
    write_rate_csv(out, result.fit);
    log << to_string(result.status) << "  " << result.summary << '\n';
    all_pass = all_pass && result.status == StudyStatus::pass;
  }
  return all_pass ? kExitOk : kExitInconclusive;
}

void cmd_allocate(std::ostream& out, double accuracy, const ScheduleSpec& schedule, const RateTriple& rates) {
  if (!(accuracy > 0.0) || !std::isfinite(accuracy)) {
    throw ParameterError("allocate: eps (target accuracy) must be > 0, got " + format_double(accuracy));
  }
  const ToleranceSchedule tolerances = ToleranceSchedule::geometric(schedule.base_c, schedule.ratio_m, schedule.levels);
  write_plan_csv(out, allocate_samples(accuracy, tolerances, rates));
}

std::filesystem::path cmd_simulate_data(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  const auto path = config.output_dir / (std::string(to_string(config.model)) + "_data.csv");
  std::ofstream out(path);
  if (!out) {
    throw InputError("simulate-data: cannot write " + path.string());
  }
  RngStream stream(config.seed, 0);
  out << "# model=" << to_string(config.model) << '\n' << "# seed=" << config.seed << '\n';
  std::size_t first_index = 0;
  SimulatedPath path_data;
  if (config.model == ModelKind::lgssm) {
    out << "# sigma2_v=" << format_double(config.sigma2_v) << '\n'
        << "# sigma2_w=" << format_double(config.sigma2_w) << '\n';
    path_data = simulate_lgssm(config.n, config.sigma2_v, config.sigma2_w, stream);
  } else {
    out << "# alpha=" << format_double(kDefaultSvmTruth.alpha) << '\n'
        << "# beta=" << format_double(kDefaultSvmTruth.beta) << '\n'
        << "# sigma2_w=" << format_double(kDefaultSvmTruth.sigma2_w) << '\n';
    path_data = simulate_svm(config.n, kDefaultSvmTruth.alpha, kDefaultSvmTruth.beta, kDefaultSvmTruth.sigma2_w,
                             stream);
    first_index = 1;
  }
  out << "index,v\n";
  for (std::size_t i = 0; i < path_data.data.size(); ++i) {
    out << (first_index + i) << ',' << format_double(path_data.data[i]) << '\n';
  }
  return path;
}

}  // namespace mlabc
