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

#ifndef MLABC_ABC_HPP
#define MLABC_ABC_HPP

#include <cmath>
#include <span>
#include <vector>

/**
 * \file
 * \brief ABC target sequence: tolerance schedule, Cauchy-type kernel and the
 * incremental weights between consecutive tolerances.
 *
 * The kernel is K_eps(y, u) = prod_i 1 / (1 + ((y_i - u_i) / eps)^2). It is
 * bounded by 1, equals 1 at u = y and is evaluated in log space throughout.
 */

namespace mlabc {

/// Decreasing tolerances eps_0 >= eps_1 >= ... >= eps_L > 0.
class ToleranceSchedule {
 public:
  /// eps_l = base_c * ratio_m^{-l} for l = 0..top_level.
  static ToleranceSchedule geometric(double base_c, int ratio_m, int top_level);

  /// Explicit tolerances. Equal neighbours are allowed so that degenerate
  /// constant schedules can be built for testing; increases are rejected.
  static ToleranceSchedule from_values(std::vector<double> values);

  /// L, the index of the finest tolerance.
  [[nodiscard]] int top_level() const { return static_cast<int>(values_.size()) - 1; }
  [[nodiscard]] double eps(int level) const;
  [[nodiscard]] double operator[](int level) const { return eps(level); }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Zero for schedules built from explicit values.
  [[nodiscard]] double base_c() const { return base_c_; }
  [[nodiscard]] int ratio_m() const { return ratio_m_; }

 private:
  explicit ToleranceSchedule(std::vector<double> values, double base_c, int ratio_m)
      : values_(std::move(values)), base_c_(base_c), ratio_m_(ratio_m) {}

  std::vector<double> values_;
  double base_c_ = 0.0;
  int ratio_m_ = 0;
};

ToleranceSchedule make_schedule(double base_c, int ratio_m, int top_level);

/// One point of the extended ABC space: pseudo-data u and latent variables.
struct ParticleState {
  std::vector<double> pseudo_data;
  std::vector<double> latent;
};

/// log of 1 / (1 + ((y - u) / eps)^2).
inline double log_kernel_factor(double y, double u, double eps) {
  const double z = (y - u) / eps;
  return -std::log1p(z * z);
}

double log_kernel(std::span<const double> y, std::span<const double> u, double eps);

double kernel_eval(std::span<const double> y, std::span<const double> u, double eps);

/**
 * log G_l(x) = log K_{eps_{l+1}}(y, u) - log K_{eps_l}(y, u).
 *
 * Only the kernel enters: the prior and likelihood factors of the two
 * unnormalized targets cancel, so intractable models are supported.
 */
double log_weight_g(const ToleranceSchedule& schedule, int level, std::span<const double> y,
                    std::span<const double> u);

}  // namespace mlabc

#endif  // MLABC_ABC_HPP
