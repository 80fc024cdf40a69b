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

#ifndef MLABC_KERNELS_HPP
#define MLABC_KERNELS_HPP

#include <cstdint>
#include <string_view>

#include "mlabc/model.hpp"
#include "mlabc/stochastic_volatility.hpp"

/**
 * \file
 * \brief MCMC kernels leaving the level-l ABC target invariant.
 *
 * Both site kernels propose (v_i, w_i) from the model itself: w_i from
 * h(. | w_{i-1}) (mu at site 0) and v_i from g(. | w_i). The full conditional
 * of the pair is then proportional to
 *
 *   [1 / (1 + ((y_i - v_i) / eps)^2)] h(w_{i+1} | w_i) * proposal density,
 *
 * where the forward factor h(w_{i+1} | w_i) is absent at the last site.
 * All acceptance computations are in log space.
 */

namespace mlabc {

enum class KernelKind { gibbs_rejection, mh_single_site };
enum class ParamUpdate { none, random_walk };

/// Random-walk proposal scales for the stochastic volatility parameters.
struct ParamStepScales {
  double alpha = 0.1;
  double beta = 0.1;
  double log_sigma2 = 0.5;
};

struct MutationKernel {
  KernelKind kind = KernelKind::mh_single_site;
  ParamUpdate param_update = ParamUpdate::none;
  ParamStepScales steps;
};

KernelKind parse_kernel_kind(std::string_view name);
std::string_view to_string(KernelKind kind);

struct SiteProposal {
  double latent;
  double observation;
};

/**
 * Exact draw of site `site` from its full conditional by rejection.
 * Accepts with probability k(y_i - v) h(w_{i+1} | w) / C*, C* = sup h.
 * Returns the number of proposals used. Throws UnsupportedModelError when a
 * forward factor is present and the model has no closed-form C*.
 */
std::uint64_t gibbs_site_update(const StateSpaceModel& model, std::size_t site, ParticleState& state, double eps,
                                RngStream& stream, CostCounters& counters);

/// Sites 0..T-1 in order; returns the total number of proposals.
std::uint64_t gibbs_sweep(const StateSpaceModel& model, ParticleState& state, double eps, RngStream& stream,
                          CostCounters& counters);

/// log of the Metropolis-Hastings ratio for moving site `site` to `proposal`.
double mh_log_acceptance(const StateSpaceModel& model, std::size_t site, const ParticleState& state,
                         const SiteProposal& proposal, double eps);

/// One single-site Metropolis-Hastings step; returns whether it moved.
bool mh_single_site(const StateSpaceModel& model, std::size_t site, ParticleState& state, double eps,
                    RngStream& stream, CostCounters& counters);

/**
 * Random-walk Metropolis blocks for (alpha, beta, log sigma2_w). The target
 * is prior x latent-path density; proposals with |beta| >= 1 are rejected.
 * Returns the number of accepted blocks (0..3).
 */
int svm_param_update(const StochasticVolatilityModel& model, ParticleState& state, const ParamStepScales& steps,
                     RngStream& stream, CostCounters& counters);

/// `sweeps` passes of the site kernel, each followed by the parameter update if enabled.
void apply_kernel(const MutationKernel& kernel, const StateSpaceModel& model, ParticleState& state, double eps,
                  int sweeps, RngStream& stream, CostCounters& counters);

}  // namespace mlabc

#endif  // MLABC_KERNELS_HPP
