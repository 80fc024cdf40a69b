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

#include "mlabc/stochastic_volatility.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

void check_stationary(double beta, double sigma2_w) {
  if (!(std::abs(beta) < 1.0)) {
    throw ParameterError("svm: stationarity requires |beta| < 1");
  }
  if (!(sigma2_w > 0.0)) {
    throw ParameterError("svm: sigma2_w must be > 0");
  }
}

double stationary_variance(const SvmParams& p) { return p.sigma2_w / (1.0 - p.beta * p.beta); }

}  // namespace

StochasticVolatilityModel::StochasticVolatilityModel(std::vector<double> returns) : data_(std::move(returns)) {
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw ParameterError("svm: returns must be finite");
    }
  }
}

SvmParams StochasticVolatilityModel::params(const ParticleState& state) const {
  const std::size_t base = num_sites();
  return {state.latent[base], state.latent[base + 1], state.latent[base + 2]};
}

void StochasticVolatilityModel::set_params(ParticleState& state, const SvmParams& params) const {
  const std::size_t base = num_sites();
  state.latent[base] = params.alpha;
  state.latent[base + 1] = params.beta;
  state.latent[base + 2] = params.sigma2_w;
}

const DistSpec& StochasticVolatilityModel::alpha_prior() {
  static const DistSpec prior = Normal{0.0, 100.0};
  return prior;
}

const DistSpec& StochasticVolatilityModel::beta_prior() {
  static const DistSpec prior = TruncatedNormal{0.0, 10.0, -1.0, 1.0};
  return prior;
}

const DistSpec& StochasticVolatilityModel::sigma2_prior() {
  static const DistSpec prior = InverseGamma{2.0, 0.01};
  return prior;
}

double StochasticVolatilityModel::log_param_prior(const SvmParams& params) {
  return log_density(alpha_prior(), params.alpha) + log_density(beta_prior(), params.beta) +
         log_density(sigma2_prior(), params.sigma2_w);
}

double StochasticVolatilityModel::log_latent_path(const ParticleState& state, const SvmParams& params) const {
  const std::size_t sites = num_sites();
  if (sites == 0) {
    return 0.0;
  }
  double total = normal_log_pdf(state.latent[0], params.alpha, stationary_variance(params));
  for (std::size_t i = 1; i < sites; ++i) {
    total += normal_log_pdf(state.latent[i], params.alpha + params.beta * (state.latent[i - 1] - params.alpha),
                            params.sigma2_w);
  }
  return total;
}

void StochasticVolatilityModel::sample_params(ParticleState& state, RngStream& stream) const {
  set_params(state, {sample(alpha_prior(), stream), sample(beta_prior(), stream), sample(sigma2_prior(), stream)});
}

double StochasticVolatilityModel::sample_latent(std::size_t site, const ParticleState& state,
                                                RngStream& stream) const {
  const SvmParams p = params(state);
  if (site == 0) {
    return p.alpha + std::sqrt(stationary_variance(p)) * stream.normal();
  }
  return p.alpha + p.beta * (state.latent[site - 1] - p.alpha) + std::sqrt(p.sigma2_w) * stream.normal();
}

double StochasticVolatilityModel::sample_observation(std::size_t /*site*/, double latent,
                                                     const ParticleState& /*state*/, RngStream& stream) const {
  return sample_stable(0.0, std::exp(0.5 * latent), kStability, kSkewness, stream);
}

double StochasticVolatilityModel::log_transition(double next, double prev, const ParticleState& state) const {
  const SvmParams p = params(state);
  return normal_log_pdf(next, p.alpha + p.beta * (prev - p.alpha), p.sigma2_w);
}

std::optional<double> StochasticVolatilityModel::log_transition_sup(const ParticleState& state) const {
  return -0.5 * std::log(2.0 * std::numbers::pi * params(state).sigma2_w);
}

SimulatedPath simulate_svm(std::size_t n, double alpha, double beta, double sigma2_w, RngStream& stream,
                           CostCounters* counters) {
  check_stationary(beta, sigma2_w);
  if (n < 1) {
    throw ParameterError("svm: need n >= 1");
  }
  SimulatedPath path;
  path.latent.resize(n);
  path.data.resize(n);
  const SvmParams p{alpha, beta, sigma2_w};
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      path.latent[i] = alpha + std::sqrt(stationary_variance(p)) * stream.normal();
    } else {
      path.latent[i] = alpha + beta * (path.latent[i - 1] - alpha) + std::sqrt(sigma2_w) * stream.normal();
    }
    path.data[i] = sample_stable(0.0, std::exp(0.5 * path.latent[i]), StochasticVolatilityModel::kStability,
                                 StochasticVolatilityModel::kSkewness, stream);
    if (counters != nullptr) {
      ++counters->model_simulations;
    }
  }
  return path;
}

std::vector<double> default_svm_series(std::size_t length) {
  RngStream stream(kDefaultSvmSeed, 0);
  auto series = simulate_svm(length, kDefaultSvmTruth.alpha, kDefaultSvmTruth.beta, kDefaultSvmTruth.sigma2_w,
                             stream)
                    .data;
  const double centre = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
  for (double& v : series) {
    v -= centre;
  }
  return series;
}

}  // namespace mlabc
