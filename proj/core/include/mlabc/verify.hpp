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

#ifndef MLABC_VERIFY_HPP
#define MLABC_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mlabc/linear_gaussian.hpp"
#include "mlabc/quadrature.hpp"
#include "mlabc/smc.hpp"

/**
 * \file
 * \brief Empirical rate studies: each produces (eps, quantity) points and a
 * least-squares fit of log quantity on log eps.
 */

namespace mlabc {

struct RatePoint {
  int level = 0;
  double eps = 0.0;
  double quantity = 0.0;
  std::size_t replicates = 0;
};

struct RateFit {
  std::string study;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// Set when r_squared falls below the study's threshold.
  bool inconclusive = false;
  std::vector<RatePoint> points;
};

inline constexpr double kDefaultMinRSquared = 0.8;

/// OLS of log q on log eps. Needs >= 3 points with finite positive eps and q.
RateFit fit_loglog(std::span<const RatePoint> points, double min_r_squared = kDefaultMinRSquared);
RateFit fit_loglog(std::span<const double> eps, std::span<const double> quantity,
                   double min_r_squared = kDefaultMinRSquared);

/// S_l = max over the quadrature u-grid of |(Z_{l-1} / Z_l) G_{l-1}(u) - 1| for l = 1..L.
std::vector<double> prop1_sup_norms(const AbcTarget& target, std::size_t grid = kDefaultQuadratureGrid);

/// S_l fitted against eps_{l-1}.
RateFit verify_prop1(const AbcTarget& target, std::size_t grid = kDefaultQuadratureGrid);

struct Prop2Options {
  std::size_t replicates = 200;
  /// Sweeps run at each tolerance before the counted sweep.
  int burn_in_sweeps = 2;
  std::uint64_t seed = 0;
};

/// Mean proposals of one rejection-within-Gibbs sweep at each tolerance.
std::vector<double> gibbs_sweep_costs(const StateSpaceModel& model, std::span<const double> eps,
                                      const Prop2Options& options);

/// Mean sweep cost fitted against eps.
RateFit verify_prop2(const StateSpaceModel& model, std::span<const double> eps, const Prop2Options& options);

struct LevelTrace {
  /// eta_l^N(phi) for l = 0..L, each from the mutated level-l particles.
  std::vector<double> means;
  CostCounters counters;
};

/// One constant-size SMC run through level L recording every level's mean.
LevelTrace smc_level_means(const AbcTarget& target, const Functional& phi, std::size_t n, const SmcOptions& options,
                           RngStream& stream);

struct BiasRateOptions {
  std::size_t big_n = 100'000;
  SmcOptions smc;
  std::uint64_t seed = 0;
  /// Below this r^2 the study is reported inconclusive rather than failed.
  double min_r_squared = 0.5;
};

/// |eta_l(phi) - exact| fitted against eps_l for l = 0..L.
RateFit estimate_bias_rate(const AbcTarget& target, const Functional& phi, double exact,
                           const BiasRateOptions& options);

struct VarianceRateOptions {
  std::size_t replicates = 100;
  SmcOptions smc;
  std::uint64_t seed = 0;
};

/**
 * Across-replicate variance of each increment of the multilevel estimate:
 * index 0 is the level-0 term, index l >= 1 the bracket built from level-l
 * particles (which approximates eta_{l+1}(phi) - eta_l(phi)).
 */
std::vector<double> increment_variances(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                                        const VarianceRateOptions& options);

/// Per-particle bracket variances N_l Var (indices 1..L-1) fitted against eps_l. Needs L >= 4.
RateFit estimate_variance_rate(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                               const VarianceRateOptions& options);

/// CSV with columns study,level,eps,quantity,replicates and '#' fit metadata.
void write_rate_csv(std::ostream& out, const RateFit& fit);

}  // namespace mlabc

#endif  // MLABC_VERIFY_HPP
