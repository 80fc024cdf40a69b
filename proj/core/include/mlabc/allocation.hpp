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

#ifndef MLABC_ALLOCATION_HPP
#define MLABC_ALLOCATION_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "mlabc/abc.hpp"

/**
 * \file
 * \brief Multilevel sample allocation.
 *
 * With bias O(eps_L^alpha), level variance O(eps_l^beta) and per-sample cost
 * O(eps_l^-zeta), minimizing sum_l N_l eps_l^-zeta subject to
 * sum_l eps_l^beta / N_l <= accuracy^2 gives
 *
 *   N_l = accuracy^-2 eps_l^{(beta + zeta)/2} K,   K = sum_l eps_l^{(beta - zeta)/2}.
 *
 * Sizes are rounded up and floored at one particle.
 */

namespace mlabc {

struct RateTriple {
  double alpha = 1.0;
  double beta = 4.0;
  double zeta = 1.0;

  void validate() const;
};

enum class AllocationRegime { standard, worst_case };

/// Which levels receive samples. The SMC sampler never simulates level L.
enum class LevelCoverage { mlsmc, coupled };

struct AllocationPlan {
  ToleranceSchedule schedule;
  RateTriple rates;
  double accuracy = 0.0;
  std::vector<std::size_t> sizes;
  double k_l_constant = 0.0;
  double predicted_variance = 0.0;
  double predicted_cost_units = 0.0;
  AllocationRegime regime = AllocationRegime::standard;
  LevelCoverage coverage = LevelCoverage::mlsmc;
  /// Exponent of the total cost in 1/accuracy; set for worst-case plans.
  std::optional<double> cost_exponent;

  [[nodiscard]] double level_cost_units(std::size_t level) const;
};

/// Smallest L >= 1 with (base_c * ratio_m^-L)^alpha <= accuracy.
int choose_top_level(double accuracy, double base_c, int ratio_m, double alpha);

AllocationPlan allocate_samples(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates,
                                LevelCoverage coverage = LevelCoverage::mlsmc);

/// Plan for beta < zeta: K = eps_f^{(beta - zeta)/2} at the finest allocated level f.
AllocationPlan worst_case_plan(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates,
                               LevelCoverage coverage = LevelCoverage::mlsmc);

/// bias^2 + sum_l variance_l / N_l.
double mse_decompose(double bias, std::span<const double> level_variances, std::span<const std::size_t> sizes);

/// Cost of i.i.d. sampling at the finest tolerance for the same accuracy.
double iid_cost_units(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates);

/// CSV table with columns level,eps,N,level_cost_units.
void write_plan_csv(std::ostream& out, const AllocationPlan& plan);

}  // namespace mlabc

#endif  // MLABC_ALLOCATION_HPP
