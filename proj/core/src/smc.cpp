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

#include "mlabc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

struct WeightedAverages {
  double weighted_phi;  // eta(phi G) / eta(G)
  double plain_phi;     // eta(phi)
};

WeightedAverages level_averages(const ParticleSystem& system, std::span<const double> log_weights,
                                const Functional& phi) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) {
    throw DegenerateWeightsError("level weights: no particle has finite log weight");
  }
  double sum_w = 0.0;
  double sum_w_phi = 0.0;
  double sum_phi = 0.0;
  for (std::size_t i = 0; i < system.particles.size(); ++i) {
    const double value = phi(system.particles[i]);
    const double w = std::exp(log_weights[i] - top);
    sum_w += w;
    sum_w_phi += w * value;
    sum_phi += value;
  }
  const auto n = static_cast<double>(system.particles.size());
  return {sum_w_phi / sum_w, sum_phi / n};
}

void check_phi(const Functional& phi) {
  if (!phi) {
    throw ParameterError("smc: functional phi is empty");
  }
}

}  // namespace

int SweepPolicy::sweeps_at(double eps) const {
  if (mode == SweepsMode::inverse_eps) {
    return std::max(1, static_cast<int>(std::ceil(1.0 / eps - 1e-9)));
  }
  return sweeps;
}

SweepsMode parse_sweeps_mode(std::string_view name) {
  if (name == "fixed") {
    return SweepsMode::fixed;
  }
  if (name == "inverse_eps") {
    return SweepsMode::inverse_eps;
  }
  throw ParameterError("unknown sweeps mode '" + std::string(name) + "' (expected fixed or inverse_eps)");
}

std::string_view to_string(SweepsMode mode) { return mode == SweepsMode::fixed ? "fixed" : "inverse_eps"; }

ResamplingScheme parse_resampling(std::string_view name) {
  if (name == "multinomial") {
    return ResamplingScheme::multinomial;
  }
  if (name == "systematic") {
    return ResamplingScheme::systematic;
  }
  throw ParameterError("unknown resampling scheme '" + std::string(name) + "' (expected multinomial or systematic)");
}

ParticleSystem init_level0(const AbcTarget& target, std::size_t n0, RngStream& stream, const InitOptions& options) {
  if (n0 < 1) {
    throw ParameterError("init_level0: n0 must be >= 1");
  }
  const StateSpaceModel& model = target.model();
  const auto y = target.data();
  const double eps0 = target.schedule().eps(0);

  ParticleSystem system;
  system.level = 0;
  system.particles.reserve(n0);
  CostCounters& counters = system.cost_counters;
  std::uint64_t& attempts = system.init_attempts;

  while (system.particles.size() < n0) {
    ++attempts;
    ParticleState state = model.empty_state();
    model.sample_params(state, stream);
    bool accepted = true;
    for (std::size_t site = 0; site < y.size(); ++site) {
      state.latent[site] = model.sample_latent(site, state, stream);
      state.pseudo_data[site] = model.sample_observation(site, state.latent[site], state, stream);
      ++counters.model_simulations;
      ++counters.kernel_evals;
      if (!(std::log(stream.uniform()) < log_kernel_factor(y[site], state.pseudo_data[site], eps0))) {
        accepted = false;
        break;
      }
    }
    if (accepted) {
      system.particles.push_back(std::move(state));
    }
    if (attempts % options.floor_check_attempts == 0) {
      const double rate = static_cast<double>(system.particles.size()) / static_cast<double>(attempts);
      if (rate < options.acceptance_floor) {
        throw InitializationError("init_level0: acceptance rate " + std::to_string(rate) + " after " +
                                  std::to_string(attempts) + " attempts is below " +
                                  std::to_string(options.acceptance_floor) + "; use a larger eps_0");
      }
    }
  }
  return system;
}

ParticleSystem resample_to(const ParticleSystem& system, std::span<const double> log_weights,
                           std::size_t target_count, RngStream& stream, ResamplingScheme scheme) {
  const std::size_t count = system.particles.size();
  if (log_weights.size() != count) {
    throw DimensionError("resample_to: " + std::to_string(log_weights.size()) + " weights for " +
                         std::to_string(count) + " particles");
  }
  if (target_count < 1) {
    throw ParameterError("resample_to: target_count must be >= 1");
  }
  if (count == 0) {
    throw DegenerateWeightsError("resample_to: empty particle system");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) {
    throw DegenerateWeightsError("resample_to: all weights are zero");
  }
  std::vector<double> cumulative(count);
  double running = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    running += std::exp(log_weights[i] - top);
    cumulative[i] = running;
  }
  const double total = running;

  const auto pick = [&](double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u * total);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), count - 1);
  };

  ParticleSystem out;
  out.level = system.level;
  out.cost_counters = system.cost_counters;
  out.init_attempts = system.init_attempts;
  out.particles.reserve(target_count);
  if (scheme == ResamplingScheme::multinomial) {
    for (std::size_t k = 0; k < target_count; ++k) {
      out.particles.push_back(system.particles[pick(stream.uniform())]);
    }
  } else {
    const double offset = stream.uniform();
    const auto m = static_cast<double>(target_count);
    for (std::size_t k = 0; k < target_count; ++k) {
      out.particles.push_back(system.particles[pick((static_cast<double>(k) + offset) / m)]);
    }
  }
  return out;
}

std::vector<double> level_log_weights(const AbcTarget& target, int level, ParticleSystem& system) {
  std::vector<double> log_weights;
  log_weights.reserve(system.particles.size());
  for (const ParticleState& state : system.particles) {
    log_weights.push_back(target.log_weight(level, state));
  }
  system.cost_counters.kernel_evals += system.particles.size() * target.data().size();
  return log_weights;
}

void mutate(const AbcTarget& target, int level, ParticleSystem& system, const SmcOptions& options,
            RngStream& stream) {
  const double eps = target.schedule().eps(level);
  const int sweeps = options.sweeps.sweeps_at(eps);
  for (ParticleState& state : system.particles) {
    apply_kernel(options.kernel, target.model(), state, eps, sweeps, stream, system.cost_counters);
  }
  system.level = level;
}

MlsmcEstimate run_mlsmc(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                        const SmcOptions& options, RngStream& stream) {
  check_phi(phi);
  const int top = target.schedule().top_level();
  const auto& sizes = plan.sizes;
  if (sizes.size() != static_cast<std::size_t>(top)) {
    throw DimensionError("run_mlsmc: plan has " + std::to_string(sizes.size()) + " levels, schedule needs " +
                         std::to_string(top));
  }
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    if (sizes[l] < 1 || (l > 0 && sizes[l] > sizes[l - 1])) {
      throw ParameterError("run_mlsmc: plan sizes must satisfy N_0 >= N_1 >= ... >= 1");
    }
  }

  MlsmcEstimate estimate;
  estimate.plan = plan;
  estimate.sizes = sizes;
  estimate.seed = stream.seed();

  ParticleSystem system = init_level0(target, sizes[0], stream, options.init);
  double spent = 0.0;
  for (int l = 0; l < top; ++l) {
    if (l > 0) {
      mutate(target, l, system, options, stream);
    }
    const std::vector<double> log_weights = level_log_weights(target, l, system);
    const WeightedAverages averages = level_averages(system, log_weights, phi);
    estimate.level_increments.push_back(l == 0 ? averages.weighted_phi
                                               : averages.weighted_phi - averages.plain_phi);
    if (l + 1 < top) {
      system = resample_to(system, log_weights, sizes[static_cast<std::size_t>(l) + 1], stream, options.resampling);
    }
    const double now = system.cost_counters.cost_units();
    estimate.level_cost_units.push_back(now - spent);
    spent = now;
  }
  estimate.value = std::accumulate(estimate.level_increments.begin(), estimate.level_increments.end(), 0.0);
  estimate.counters = system.cost_counters;
  estimate.total_cost_units = system.cost_counters.cost_units();
  return estimate;
}

MlsmcEstimate run_smc_baseline(const AbcTarget& target, const Functional& phi, std::size_t n_fixed,
                               const SmcOptions& options, RngStream& stream) {
  check_phi(phi);
  if (n_fixed < 1) {
    throw ParameterError("run_smc_baseline: n_fixed must be >= 1");
  }
  const int top = target.schedule().top_level();
  MlsmcEstimate estimate;
  estimate.seed = stream.seed();
  estimate.sizes.assign(static_cast<std::size_t>(top) + 1, n_fixed);

  ParticleSystem system = init_level0(target, n_fixed, stream, options.init);
  double spent = 0.0;
  for (int l = 0; l < top; ++l) {
    if (l > 0) {
      mutate(target, l, system, options, stream);
    }
    const std::vector<double> log_weights = level_log_weights(target, l, system);
    system = resample_to(system, log_weights, n_fixed, stream, options.resampling);
    const double now = system.cost_counters.cost_units();
    estimate.level_cost_units.push_back(now - spent);
    spent = now;
  }
  mutate(target, top, system, options, stream);
  estimate.level_cost_units.push_back(system.cost_counters.cost_units() - spent);

  double sum = 0.0;
  for (const ParticleState& state : system.particles) {
    sum += phi(state);
  }
  estimate.value = sum / static_cast<double>(n_fixed);
  estimate.counters = system.cost_counters;
  estimate.total_cost_units = system.cost_counters.cost_units();
  return estimate;
}

std::size_t match_baseline_size(double cost_units, std::span<const double> unit_costs) {
  if (!(cost_units > 0.0)) {
    throw ParameterError("match_baseline_size: cost_units must be > 0");
  }
  const double per_particle = std::accumulate(unit_costs.begin(), unit_costs.end(), 0.0);
  if (!(per_particle > 0.0)) {
    throw ParameterError("match_baseline_size: per-particle cost must be > 0");
  }
  const double n = std::floor(cost_units / per_particle * (1.0 + 1e-12));
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::size_t match_baseline_size(double cost_units, const ToleranceSchedule& schedule, double zeta,
                                const SweepPolicy& sweeps) {
  const std::vector<double> units = predicted_unit_costs(schedule, zeta, sweeps);
  return match_baseline_size(cost_units, units);
}

std::vector<double> baseline_unit_costs(const MlsmcEstimate& multilevel) {
  const auto& level_cost = multilevel.level_cost_units;
  const auto& sizes = multilevel.sizes;
  if (level_cost.empty() || level_cost.size() != sizes.size()) {
    throw DimensionError("baseline_unit_costs: estimate carries no per-level costs");
  }
  std::vector<double> units;
  units.reserve(level_cost.size() + 1);
  for (std::size_t l = 0; l < level_cost.size(); ++l) {
    units.push_back(level_cost[l] / static_cast<double>(sizes[l]));
  }
  const std::size_t last = units.size() - 1;
  double next = units[last];
  if (last >= 2 && units[last - 1] > 0.0) {
    next *= units[last] / units[last - 1];
  }
  units.push_back(next);
  return units;
}

std::vector<double> predicted_unit_costs(const ToleranceSchedule& schedule, double zeta, const SweepPolicy& sweeps) {
  std::vector<double> units;
  for (const double eps : schedule.values()) {
    units.push_back(static_cast<double>(sweeps.sweeps_at(eps)) * std::pow(eps, -zeta));
  }
  return units;
}

}  // namespace mlabc
