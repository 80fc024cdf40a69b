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

#include "mlabc/linear_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mlabc/distributions.hpp"
#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

void check_variances(double sigma2_v, double sigma2_w) {
  if (!(sigma2_v > 0.0) || !(sigma2_w > 0.0) || !std::isfinite(sigma2_v) || !std::isfinite(sigma2_w)) {
    throw ParameterError("linear gaussian: variances must be finite and > 0");
  }
}

struct FilterStep {
  double mean;
  double variance;
};

// Filtered moments at times 0..last, plus one-step predicted variances.
std::vector<FilterStep> kalman_filter(const LinearGaussianSsm& model, std::size_t last,
                                      std::vector<FilterStep>* predicted = nullptr) {
  const auto y = model.data();
  std::vector<FilterStep> filtered(last + 1);
  double mean = 0.0;
  double variance = model.sigma2_w();
  for (std::size_t i = 0; i <= last; ++i) {
    if (i > 0) {
      variance += model.sigma2_w();
    }
    if (predicted != nullptr) {
      predicted->push_back({mean, variance});
    }
    const double gain = variance / (variance + model.sigma2_v());
    mean += gain * (y[i] - mean);
    variance *= (1.0 - gain);
    filtered[i] = {mean, variance};
  }
  return filtered;
}

}  // namespace

LinearGaussianSsm::LinearGaussianSsm(std::vector<double> data_v, double sigma2_v, double sigma2_w)
    : data_(std::move(data_v)), sigma2_v_(sigma2_v), sigma2_w_(sigma2_w) {
  check_variances(sigma2_v, sigma2_w);
  if (data_.empty()) {
    throw ParameterError("linear gaussian: need at least one observation");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw ParameterError("linear gaussian: data must be finite");
    }
  }
}

double LinearGaussianSsm::sample_latent(std::size_t site, const ParticleState& state, RngStream& stream) const {
  const double centre = site == 0 ? 0.0 : state.latent[site - 1];
  return centre + std::sqrt(sigma2_w_) * stream.normal();
}

double LinearGaussianSsm::sample_observation(std::size_t /*site*/, double latent, const ParticleState& /*state*/,
                                             RngStream& stream) const {
  return latent + std::sqrt(sigma2_v_) * stream.normal();
}

double LinearGaussianSsm::log_transition(double next, double prev, const ParticleState& /*state*/) const {
  return normal_log_pdf(next, prev, sigma2_w_);
}

std::optional<double> LinearGaussianSsm::log_transition_sup(const ParticleState& /*state*/) const {
  return -0.5 * std::log(2.0 * std::numbers::pi * sigma2_w_);
}

SimulatedPath simulate_lgssm(std::size_t n, double sigma2_v, double sigma2_w, RngStream& stream,
                             CostCounters* counters) {
  check_variances(sigma2_v, sigma2_w);
  SimulatedPath path;
  path.latent.resize(n + 1);
  path.data.resize(n + 1);
  const double sd_w = std::sqrt(sigma2_w);
  const double sd_v = std::sqrt(sigma2_v);
  for (std::size_t i = 0; i <= n; ++i) {
    path.latent[i] = (i == 0 ? 0.0 : path.latent[i - 1]) + sd_w * stream.normal();
    path.data[i] = path.latent[i] + sd_v * stream.normal();
    if (counters != nullptr) {
      ++counters->model_simulations;
    }
  }
  return path;
}

double kalman_posterior_mean(const LinearGaussianSsm& model, std::size_t i) {
  if (i > model.horizon()) {
    throw IndexError("kalman: time " + std::to_string(i) + " beyond horizon " + std::to_string(model.horizon()));
  }
  return kalman_filter(model, i).back().mean;
}

std::vector<double> kalman_smoothed_means(const LinearGaussianSsm& model) {
  std::vector<FilterStep> predicted;
  const auto filtered = kalman_filter(model, model.horizon(), &predicted);
  std::vector<double> smoothed(filtered.size());
  smoothed.back() = filtered.back().mean;
  for (std::size_t p = filtered.size() - 1; p-- > 0;) {
    const double gain = filtered[p].variance / predicted[p + 1].variance;
    smoothed[p] = filtered[p].mean + gain * (smoothed[p + 1] - predicted[p + 1].mean);
  }
  return smoothed;
}

}  // namespace mlabc
