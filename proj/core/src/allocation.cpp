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

#include "mlabc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlabc/csv.hpp"
#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

// Relative slack so that values like 1 + 1e-15 do not round up to 2.
constexpr double kCeilSlack = 1e-9;

std::size_t ceil_count(double x) {
  const double rounded = std::ceil(x - kCeilSlack * std::max(1.0, x));
  return static_cast<std::size_t>(std::max(1.0, rounded));
}

std::size_t allocated_levels(const ToleranceSchedule& schedule, LevelCoverage coverage) {
  const auto top = static_cast<std::size_t>(schedule.top_level());
  return coverage == LevelCoverage::mlsmc ? top : top + 1;
}

void check_accuracy(double accuracy) {
  if (!(accuracy > 0.0) || !std::isfinite(accuracy)) {
    throw ParameterError("allocation: accuracy must be > 0, got " + std::to_string(accuracy));
  }
}

AllocationPlan build_plan(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates,
                          LevelCoverage coverage, double k_constant, AllocationRegime regime) {
  AllocationPlan plan{.schedule = schedule,
                      .rates = rates,
                      .accuracy = accuracy,
                      .sizes = {},
                      .k_l_constant = k_constant,
                      .predicted_variance = 0.0,
                      .predicted_cost_units = 0.0,
                      .regime = regime,
                      .coverage = coverage,
                      .cost_exponent = std::nullopt};
  const std::size_t levels = allocated_levels(schedule, coverage);
  plan.sizes.resize(levels);
  const double scale = 1.0 / (accuracy * accuracy);
  for (std::size_t l = 0; l < levels; ++l) {
    const double eps = schedule.eps(static_cast<int>(l));
    plan.sizes[l] = ceil_count(scale * std::pow(eps, 0.5 * (rates.beta + rates.zeta)) * k_constant);
    plan.predicted_variance += std::pow(eps, rates.beta) / static_cast<double>(plan.sizes[l]);
    plan.predicted_cost_units += plan.level_cost_units(l);
  }
  return plan;
}

}  // namespace

void RateTriple::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(zeta > 0.0)) {
    throw ParameterError("rates: alpha, beta and zeta must all be > 0");
  }
}

double AllocationPlan::level_cost_units(std::size_t level) const {
  return static_cast<double>(sizes.at(level)) * std::pow(schedule.eps(static_cast<int>(level)), -rates.zeta);
}

int choose_top_level(double accuracy, double base_c, int ratio_m, double alpha) {
  check_accuracy(accuracy);
  if (!(base_c > 0.0) || ratio_m < 2 || !(alpha > 0.0)) {
    throw ParameterError("choose_top_level: need base_c > 0, ratio_m >= 2, alpha > 0");
  }
  const double threshold = accuracy * (1.0 + 1e-12);
  int level = 1;
  while (std::pow(base_c * std::pow(static_cast<double>(ratio_m), -level), alpha) > threshold) {
    ++level;
  }
  return level;
}

AllocationPlan allocate_samples(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates,
                                LevelCoverage coverage) {
  check_accuracy(accuracy);
  rates.validate();
  double k_constant = 0.0;
  const std::size_t levels = allocated_levels(schedule, coverage);
  for (std::size_t l = 0; l < levels; ++l) {
    k_constant += std::pow(schedule.eps(static_cast<int>(l)), 0.5 * (rates.beta - rates.zeta));
  }
  return build_plan(accuracy, schedule, rates, coverage, k_constant, AllocationRegime::standard);
}

AllocationPlan worst_case_plan(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates,
                               LevelCoverage coverage) {
  check_accuracy(accuracy);
  rates.validate();
  if (!(rates.beta < rates.zeta)) {
    throw RegimeError("worst_case_plan: requires beta < zeta");
  }
  const std::size_t finest = allocated_levels(schedule, coverage) - 1;
  const double k_constant = std::pow(schedule.eps(static_cast<int>(finest)), 0.5 * (rates.beta - rates.zeta));
  AllocationPlan plan = build_plan(accuracy, schedule, rates, coverage, k_constant, AllocationRegime::worst_case);
  const double delta = std::max(0.0, 2.0 - rates.beta / rates.alpha);
  plan.cost_exponent = rates.zeta / rates.alpha + delta;
  return plan;
}

double mse_decompose(double bias, std::span<const double> level_variances, std::span<const std::size_t> sizes) {
  if (level_variances.size() != sizes.size()) {
    throw DimensionError("mse_decompose: variances and sizes differ in length");
  }
  double mse = bias * bias;
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    if (sizes[l] == 0) {
      throw ParameterError("mse_decompose: sample size 0 at level " + std::to_string(l));
    }
    mse += level_variances[l] / static_cast<double>(sizes[l]);
  }
  return mse;
}

double iid_cost_units(double accuracy, const ToleranceSchedule& schedule, const RateTriple& rates) {
  check_accuracy(accuracy);
  return std::pow(accuracy, -2.0) * std::pow(schedule.eps(schedule.top_level()), -rates.zeta);
}

void write_plan_csv(std::ostream& out, const AllocationPlan& plan) {
  out << "level,eps,N,level_cost_units\n";
  for (std::size_t l = 0; l < plan.sizes.size(); ++l) {
    out << l << ',' << format_double(plan.schedule.eps(static_cast<int>(l))) << ',' << plan.sizes[l] << ','
        << format_double(plan.level_cost_units(l)) << '\n';
  }
}

}  // namespace mlabc
