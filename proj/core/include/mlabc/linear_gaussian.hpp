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

#ifndef MLABC_LINEAR_GAUSSIAN_HPP
#define MLABC_LINEAR_GAUSSIAN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mlabc/model.hpp"

namespace mlabc {

/// Latent path and observations produced by a model simulator.
struct SimulatedPath {
  std::vector<double> latent;
  std::vector<double> data;
};

/**
 * Random-walk linear Gaussian state-space model on times 0..n:
 *
 *   W_0 ~ N(0, sigma2_w),  W_i | w_{i-1} ~ N(w_{i-1}, sigma2_w),  V_i | w_i ~ N(w_i, sigma2_v).
 */
class LinearGaussianSsm final : public StateSpaceModel {
 public:
  LinearGaussianSsm(std::vector<double> data_v, double sigma2_v, double sigma2_w);

  [[nodiscard]] std::span<const double> data() const override { return data_; }
  /// Time horizon n; the record holds n + 1 observations.
  [[nodiscard]] std::size_t horizon() const { return data_.size() - 1; }
  [[nodiscard]] double sigma2_v() const { return sigma2_v_; }
  [[nodiscard]] double sigma2_w() const { return sigma2_w_; }

  [[nodiscard]] double sample_latent(std::size_t site, const ParticleState& state, RngStream& stream) const override;
  [[nodiscard]] double sample_observation(std::size_t site, double latent, const ParticleState& state,
                                          RngStream& stream) const override;
  [[nodiscard]] double log_transition(double next, double prev, const ParticleState& state) const override;
  [[nodiscard]] std::optional<double> log_transition_sup(const ParticleState& state) const override;

 private:
  std::vector<double> data_;
  double sigma2_v_;
  double sigma2_w_;
};

/// Simulates times 0..n; ticks `counters` once per transition draw when given.
SimulatedPath simulate_lgssm(std::size_t n, double sigma2_v, double sigma2_w, RngStream& stream,
                             CostCounters* counters = nullptr);

/// Filtered mean E[W_i | v_{0:i}] by the Kalman recursion.
double kalman_posterior_mean(const LinearGaussianSsm& model, std::size_t i);

/// Smoothed means E[W_p | v_{0:n}] for p = 0..n (Rauch-Tung-Striebel).
std::vector<double> kalman_smoothed_means(const LinearGaussianSsm& model);

}  // namespace mlabc

#endif  // MLABC_LINEAR_GAUSSIAN_HPP
