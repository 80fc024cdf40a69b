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

#ifndef MLABC_MODEL_HPP
#define MLABC_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>

#include "mlabc/abc.hpp"
#include "mlabc/rng.hpp"

namespace mlabc {

/// Sampling effort spent by a run. Cost units are simulations plus evaluations.
struct CostCounters {
  std::uint64_t model_simulations = 0;
  std::uint64_t kernel_evals = 0;
  std::uint64_t mcmc_proposals = 0;

  [[nodiscard]] double cost_units() const {
    return static_cast<double>(model_simulations) + static_cast<double>(kernel_evals);
  }

  CostCounters& operator+=(const CostCounters& other) {
    model_simulations += other.model_simulations;
    kernel_evals += other.kernel_evals;
    mcmc_proposals += other.mcmc_proposals;
    return *this;
  }
};

/// Axis-aligned box carrying a compact (theta, u) domain.
struct Box {
  double theta_lo;
  double theta_hi;
  double u_lo;
  double u_hi;
};

/**
 * Pointwise prior and likelihood for single-observation verification targets.
 * Only these targets support quadrature of the normalizing constants.
 */
class TractableDensities {
 public:
  virtual ~TractableDensities() = default;
  [[nodiscard]] virtual double log_prior(double theta) const = 0;
  [[nodiscard]] virtual double log_likelihood(double u, double theta) const = 0;
  [[nodiscard]] virtual Box domain() const = 0;
};

/**
 * A state-space model viewed as an ABC target on sites 0..T-1.
 *
 * ParticleState layout: pseudo_data[i] is the simulated observation at site
 * i; latent[i] is the latent state w_i for i < T, followed by
 * num_params() static parameters. Models that index their data from 1 map
 * their first observation to site 0.
 *
 * Site operations implement the factorization
 *   mu(w_0) g(v_0 | w_0) prod_{i>=1} g(v_i | w_i) h(w_i | w_{i-1})
 * where mu, g and h may depend on the static parameters.
 */
class StateSpaceModel {
 public:
  virtual ~StateSpaceModel() = default;

  /// Observed record y (length T).
  [[nodiscard]] virtual std::span<const double> data() const = 0;
  [[nodiscard]] std::size_t num_sites() const { return data().size(); }
  [[nodiscard]] virtual std::size_t num_params() const { return 0; }

  /// A state with the right layout, all zeros.
  [[nodiscard]] ParticleState empty_state() const;

  /// Draws the static parameters from their prior into `state`.
  virtual void sample_params(ParticleState& state, RngStream& stream) const;

  /// w_i from mu (site 0) or h(. | w_{i-1}).
  [[nodiscard]] virtual double sample_latent(std::size_t site, const ParticleState& state,
                                             RngStream& stream) const = 0;

  /// v_i from g(. | w_i).
  [[nodiscard]] virtual double sample_observation(std::size_t site, double latent, const ParticleState& state,
                                                  RngStream& stream) const = 0;

  /// log h(w_next | w_prev).
  [[nodiscard]] virtual double log_transition(double next, double prev, const ParticleState& state) const = 0;

  /// log sup_w h(w | .), when it is finite and known in closed form.
  [[nodiscard]] virtual std::optional<double> log_transition_sup(const ParticleState& state) const {
    (void)state;
    return std::nullopt;
  }

  /// Non-null for targets with evaluable prior and likelihood on a compact box.
  [[nodiscard]] virtual const TractableDensities* tractable() const { return nullptr; }

  /// theta ~ pi, u ~ f(. | theta), counting one simulation per site.
  [[nodiscard]] ParticleState simulate_prior(RngStream& stream, CostCounters& counters) const;
};

/// The ABC target sequence: model (which carries y) and tolerance schedule.
class AbcTarget {
 public:
  AbcTarget(std::shared_ptr<const StateSpaceModel> model, ToleranceSchedule schedule);

  [[nodiscard]] const StateSpaceModel& model() const { return *model_; }
  [[nodiscard]] std::shared_ptr<const StateSpaceModel> model_ptr() const { return model_; }
  [[nodiscard]] const ToleranceSchedule& schedule() const { return schedule_; }
  [[nodiscard]] std::span<const double> data() const { return model_->data(); }

  [[nodiscard]] double log_weight(int level, const ParticleState& state) const {
    return log_weight_g(schedule_, level, data(), state.pseudo_data);
  }

 private:
  std::shared_ptr<const StateSpaceModel> model_;
  ToleranceSchedule schedule_;
};

}  // namespace mlabc

#endif  // MLABC_MODEL_HPP
