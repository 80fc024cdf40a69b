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

#include "mlabc/toy_model.hpp"

#include <cmath>
#include <limits>

#include "mlabc/distributions.hpp"
#include "mlabc/errors.hpp"

namespace mlabc {

CompactToyModel::CompactToyModel(const CompactToyConfig& config) : config_(config), data_{config.y} {
  if (!(config.theta_lo < config.theta_hi) || !(config.u_lo < config.u_hi) || !(config.noise_sd > 0.0)) {
    throw ParameterError("toy model: need theta_lo < theta_hi, u_lo < u_hi, noise_sd > 0");
  }
}

double CompactToyModel::sample_latent(std::size_t /*site*/, const ParticleState& /*state*/,
                                      RngStream& stream) const {
  return sample(Uniform{config_.theta_lo, config_.theta_hi}, stream);
}

double CompactToyModel::sample_observation(std::size_t /*site*/, double latent, const ParticleState& /*state*/,
                                           RngStream& stream) const {
  return sample(TruncatedNormal{latent, config_.noise_sd * config_.noise_sd, config_.u_lo, config_.u_hi}, stream);
}

double CompactToyModel::log_transition(double /*next*/, double /*prev*/, const ParticleState& /*state*/) const {
  // Single site: no transition factor ever enters.
  return 0.0;
}

double CompactToyModel::log_prior(double theta) const {
  return log_density(Uniform{config_.theta_lo, config_.theta_hi}, theta);
}

double CompactToyModel::log_likelihood(double u, double theta) const {
  // Closed interval so quadrature nodes on the box edge carry their density.
  if (u < config_.u_lo || u > config_.u_hi) {
    return -std::numeric_limits<double>::infinity();
  }
  const double sd = config_.noise_sd;
  const double mass =
      standard_normal_cdf((config_.u_hi - theta) / sd) - standard_normal_cdf((config_.u_lo - theta) / sd);
  return normal_log_pdf(u, theta, sd * sd) - std::log(mass);
}

Box CompactToyModel::domain() const { return {config_.theta_lo, config_.theta_hi, config_.u_lo, config_.u_hi}; }

}  // namespace mlabc
