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

#include "mlabc/abc.hpp"

#include <cmath>
#include <string>

#include "mlabc/errors.hpp"

namespace mlabc {

ToleranceSchedule ToleranceSchedule::geometric(double base_c, int ratio_m, int top_level) {
  if (!(base_c > 0.0) || !std::isfinite(base_c)) {
    throw ParameterError("schedule: base_c must be > 0");
  }
  if (ratio_m < 2) {
    throw ParameterError("schedule: ratio_m must be >= 2");
  }
  if (top_level < 1) {
    throw ParameterError("schedule: top_level must be >= 1");
  }
  std::vector<double> values(static_cast<std::size_t>(top_level) + 1);
  values[0] = base_c;
  for (std::size_t l = 1; l < values.size(); ++l) {
    values[l] = values[l - 1] / ratio_m;
  }
  return ToleranceSchedule(std::move(values), base_c, ratio_m);
}

ToleranceSchedule ToleranceSchedule::from_values(std::vector<double> values) {
  if (values.size() < 2) {
    throw ParameterError("schedule: need at least two tolerances");
  }
  for (std::size_t l = 0; l < values.size(); ++l) {
    if (!(values[l] > 0.0) || !std::isfinite(values[l])) {
      throw ParameterError("schedule: tolerances must be finite and > 0");
    }
    if (l > 0 && values[l] > values[l - 1]) {
      throw ParameterError("schedule: tolerances must be non-increasing");
    }
  }
  return ToleranceSchedule(std::move(values), 0.0, 0);
}

double ToleranceSchedule::eps(int level) const {
  if (level < 0 || level > top_level()) {
    throw IndexError("schedule: level " + std::to_string(level) + " outside [0, " + std::to_string(top_level()) +
                     "]");
  }
  return values_[static_cast<std::size_t>(level)];
}

ToleranceSchedule make_schedule(double base_c, int ratio_m, int top_level) {
  return ToleranceSchedule::geometric(base_c, ratio_m, top_level);
}

double log_kernel(std::span<const double> y, std::span<const double> u, double eps) {
  if (y.size() != u.size()) {
    throw DimensionError("kernel: data has " + std::to_string(y.size()) + " entries, pseudo-data has " +
                         std::to_string(u.size()));
  }
  if (!(eps > 0.0)) {
    throw ParameterError("kernel: eps must be > 0");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += log_kernel_factor(y[i], u[i], eps);
  }
  return total;
}

double kernel_eval(std::span<const double> y, std::span<const double> u, double eps) {
  return std::exp(log_kernel(y, u, eps));
}

double log_weight_g(const ToleranceSchedule& schedule, int level, std::span<const double> y,
                    std::span<const double> u) {
  if (level < 0 || level + 1 > schedule.top_level()) {
    throw IndexError("weight: level " + std::to_string(level) + " needs level + 1 <= " +
                     std::to_string(schedule.top_level()));
  }
  if (y.size() != u.size()) {
    throw DimensionError("weight: data/pseudo-data length mismatch");
  }
  const double coarse = schedule.eps(level);
  const double fine = schedule.eps(level + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d2 = (y[i] - u[i]) * (y[i] - u[i]);
    // log[(eps_f^2 / (eps_f^2 + d2)) * ((eps_c^2 + d2) / eps_c^2)], stable for d2 -> 0.
    total += std::log1p(d2 / (coarse * coarse)) - std::log1p(d2 / (fine * fine));
  }
  return total;
}

}  // namespace mlabc
