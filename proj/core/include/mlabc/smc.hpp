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

#ifndef MLABC_SMC_HPP
#define MLABC_SMC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mlabc/allocation.hpp"
#include "mlabc/kernels.hpp"
#include "mlabc/model.hpp"

/**
 * \file
 * \brief Multilevel SMC sampler over a sequence of ABC targets and the
 * single-level SMC baseline it is compared against.
 *
 * With N_l particles at level l and G_l = K_{eps_{l+1}} / K_{eps_l},
 *
 *   Y = eta_0(phi G_0) / eta_0(G_0)
 *     + sum_{l=1}^{L-1} [ eta_l(phi G_l) / eta_l(G_l) - eta_l(phi) ],
 *
 * every average taken over the mutated, pre-resampling level-l particles.
 */

namespace mlabc {

using Functional = std::function<double(const ParticleState&)>;

struct ParticleSystem {
  int level = 0;
  std::vector<ParticleState> particles;
  CostCounters cost_counters;
  /// Prior draws started during initialization (accepted or not).
  std::uint64_t init_attempts = 0;
};

struct InitOptions {
  /// Initialization fails if the acceptance rate is below this ...
  double acceptance_floor = 1e-6;
  /// ... once this many attempts have been made.
  std::uint64_t floor_check_attempts = 10'000'000;
};

enum class ResamplingScheme { multinomial, systematic };

enum class SweepsMode { fixed, inverse_eps };

/// Number of kernel sweeps at a level: a constant, or ceil(1 / eps_l).
struct SweepPolicy {
  SweepsMode mode = SweepsMode::fixed;
  int sweeps = 1;

  [[nodiscard]] int sweeps_at(double eps) const;
};

SweepsMode parse_sweeps_mode(std::string_view name);
std::string_view to_string(SweepsMode mode);
ResamplingScheme parse_resampling(std::string_view name);

struct SmcOptions {
  MutationKernel kernel;
  SweepPolicy sweeps;
  ResamplingScheme resampling = ResamplingScheme::multinomial;
  InitOptions init;
};

struct MlsmcEstimate {
  double value = 0.0;
  /// Level-0 term followed by the L-1 bracketed corrections. Empty for the baseline.
  std::vector<double> level_increments;
  /// Set for multilevel runs.
  std::optional<AllocationPlan> plan;
  /// Particle count used at each simulated level.
  std::vector<std::size_t> sizes;
  CostCounters counters;
  double total_cost_units = 0.0;
  /// Cost units spent at each simulated level (initialization counts toward level 0).
  std::vector<double> level_cost_units;
  std::uint64_t seed = 0;
};

/**
 * Exact i.i.d. draws from eta_0 by rejection. Sites are simulated in order
 * and each kernel factor is accepted with its own uniform, so an attempt
 * stops at the first rejected site; the accepted law is the same as
 * accepting a full simulation with probability K_{eps_0}(y, u).
 */
ParticleSystem init_level0(const AbcTarget& target, std::size_t n0, RngStream& stream,
                           const InitOptions& options = {});

/// target_count draws with probabilities proportional to exp(log_weights).
ParticleSystem resample_to(const ParticleSystem& system, std::span<const double> log_weights,
                           std::size_t target_count, RngStream& stream,
                           ResamplingScheme scheme = ResamplingScheme::multinomial);

/// log G_level for every particle; counts one kernel evaluation per site.
std::vector<double> level_log_weights(const AbcTarget& target, int level, ParticleSystem& system);

/// Mutates every particle with the level-`level` kernel.
void mutate(const AbcTarget& target, int level, ParticleSystem& system, const SmcOptions& options,
            RngStream& stream);

/// Multilevel estimate of eta_L(phi) with the plan's sizes N_0..N_{L-1}.
MlsmcEstimate run_mlsmc(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                        const SmcOptions& options, RngStream& stream);

/// eta_L^N(phi) from a constant-size sampler run through level L.
MlsmcEstimate run_smc_baseline(const AbcTarget& target, const Functional& phi, std::size_t n_fixed,
                               const SmcOptions& options, RngStream& stream);

/// Predicted per-particle cost: sweeps_at(eps_l) * eps_l^-zeta for l = 0..L.
std::vector<double> predicted_unit_costs(const ToleranceSchedule& schedule, double zeta, const SweepPolicy& sweeps);

/// Largest n with n * sum(unit_costs) <= cost_units, at least 1.
std::size_t match_baseline_size(double cost_units, std::span<const double> unit_costs);

/// As above with predicted_unit_costs(schedule, zeta, sweeps).
std::size_t match_baseline_size(double cost_units, const ToleranceSchedule& schedule, double zeta,
                                const SweepPolicy& sweeps);

/**
 * Per-particle cost of levels 0..L for a baseline run, measured from a
 * multilevel run that simulated levels 0..L-1. The unmeasured level L
 * continues the growth between levels L-2 and L-1 (mutation levels only).
 */
std::vector<double> baseline_unit_costs(const MlsmcEstimate& multilevel);

}  // namespace mlabc

#endif  // MLABC_SMC_HPP
