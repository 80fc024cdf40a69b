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

#ifndef MLABC_STOCHASTIC_VOLATILITY_HPP
#define MLABC_STOCHASTIC_VOLATILITY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mlabc/distributions.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/model.hpp"

namespace mlabc {

struct SvmParams {
  double alpha;
  double beta;
  double sigma2_w;
};

/**
 * Alpha-stable stochastic volatility model on times 1..n (sites 0..n-1):
 *
 *   W_1 ~ N(alpha, sigma2_w / (1 - beta^2))
 *   W_i | w_{i-1} ~ N(alpha + beta (w_{i-1} - alpha), sigma2_w)
 *   V_i | w_i ~ Stable(location 0, scale exp(w_i / 2), stability 1.75, skewness 1)
 *
 * Priors: alpha ~ N(0, 100), beta ~ N(0, 10) truncated to (-1, 1),
 * sigma2_w ~ InverseGamma(2, 1/100). The stable observation density is never
 * evaluated. The parameters occupy latent[n], latent[n+1], latent[n+2].
 */
class StochasticVolatilityModel final : public StateSpaceModel {
 public:
  static constexpr double kStability = 1.75;
  static constexpr double kSkewness = 1.0;

  /// `returns` may be empty, which leaves a parameter-only target.
  explicit StochasticVolatilityModel(std::vector<double> returns);

  [[nodiscard]] std::span<const double> data() const override { return data_; }
  [[nodiscard]] std::size_t num_params() const override { return 3; }

  [[nodiscard]] SvmParams params(const ParticleState& state) const;
  void set_params(ParticleState& state, const SvmParams& params) const;

  static const DistSpec& alpha_prior();
  static const DistSpec& beta_prior();
  static const DistSpec& sigma2_prior();
  [[nodiscard]] static double log_param_prior(const SvmParams& params);

  /// log mu(w_0) + sum_i log h(w_i | w_{i-1}) under `params`.
  [[nodiscard]] double log_latent_path(const ParticleState& state, const SvmParams& params) const;

  void sample_params(ParticleState& state, RngStream& stream) const override;
  [[nodiscard]] double sample_latent(std::size_t site, const ParticleState& state, RngStream& stream) const override;
  [[nodiscard]] double sample_observation(std::size_t site, double latent, const ParticleState& state,
                                          RngStream& stream) const override;
  [[nodiscard]] double log_transition(double next, double prev, const ParticleState& state) const override;
  [[nodiscard]] std::optional<double> log_transition_sup(const ParticleState& state) const override;

 private:
  std::vector<double> data_;
};

/// Simulates times 1..n. Throws ParameterError unless |beta| < 1.
SimulatedPath simulate_svm(std::size_t n, double alpha, double beta, double sigma2_w, RngStream& stream,
                           CostCounters* counters = nullptr);

inline constexpr std::size_t kDefaultSvmLength = 533;
inline constexpr SvmParams kDefaultSvmTruth{0.0, 0.9, 0.02};
inline constexpr std::uint64_t kDefaultSvmSeed = 20130214;

/// Mean-corrected synthetic return series used when no price file is given.
std::vector<double> default_svm_series(std::size_t length = kDefaultSvmLength);

}  // namespace mlabc

#endif  // MLABC_STOCHASTIC_VOLATILITY_HPP
