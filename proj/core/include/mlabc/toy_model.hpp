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

#ifndef MLABC_TOY_MODEL_HPP
#define MLABC_TOY_MODEL_HPP

#include <array>

#include "mlabc/model.hpp"

namespace mlabc {

struct CompactToyConfig {
  double theta_lo = -1.0;
  double theta_hi = 1.0;
  double noise_sd = 0.5;
  double u_lo = -1.0;
  double u_hi = 1.0;
  /// Observation. Placing it outside [u_lo, u_hi] keeps (y - u)^2 bounded away from 0.
  double y = 1.5;
};

/**
 * One-observation target on a compact box:
 * theta ~ U[theta_lo, theta_hi], u | theta ~ N(theta, noise_sd^2) truncated to [u_lo, u_hi].
 *
 * It is a single-site state-space model (mu = prior, g = likelihood, no
 * transition) and also exposes pointwise densities for quadrature.
 */
class CompactToyModel final : public StateSpaceModel, public TractableDensities {
 public:
  explicit CompactToyModel(const CompactToyConfig& config = {});

  [[nodiscard]] const CompactToyConfig& config() const { return config_; }

  [[nodiscard]] std::span<const double> data() const override { return data_; }
  [[nodiscard]] double sample_latent(std::size_t site, const ParticleState& state, RngStream& stream) const override;
  [[nodiscard]] double sample_observation(std::size_t site, double latent, const ParticleState& state,
                                          RngStream& stream) const override;
  [[nodiscard]] double log_transition(double next, double prev, const ParticleState& state) const override;
  [[nodiscard]] const TractableDensities* tractable() const override { return this; }

  [[nodiscard]] double log_prior(double theta) const override;
  [[nodiscard]] double log_likelihood(double u, double theta) const override;
  [[nodiscard]] Box domain() const override;

 private:
  CompactToyConfig config_;
  std::array<double, 1> data_;
};

}  // namespace mlabc

#endif  // MLABC_TOY_MODEL_HPP
