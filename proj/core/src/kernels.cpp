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

#include "mlabc/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

constexpr std::uint64_t kMaxRejectionAttempts = 4'000'000'000ULL;

bool has_forward_factor(const StateSpaceModel& model, std::size_t site) { return site + 1 < model.num_sites(); }

void check_site(const StateSpaceModel& model, std::size_t site) {
  if (site >= model.num_sites()) {
    throw IndexError("kernel: site " + std::to_string(site) + " outside [0, " + std::to_string(model.num_sites()) +
                     ")");
  }
}

SiteProposal propose_site(const StateSpaceModel& model, std::size_t site, const ParticleState& state,
                          RngStream& stream, CostCounters& counters) {
  const double latent = model.sample_latent(site, state, stream);
  const double observation = model.sample_observation(site, latent, state, stream);
  ++counters.model_simulations;
  ++counters.kernel_evals;
  ++counters.mcmc_proposals;
  return {latent, observation};
}

}  // namespace

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gibbs_rejection" || name == "gibbs") {
    return KernelKind::gibbs_rejection;
  }
  if (name == "mh_single_site" || name == "mh") {
    return KernelKind::mh_single_site;
  }
  throw ParameterError("unknown kernel '" + std::string(name) + "' (expected gibbs_rejection or mh_single_site)");
}

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::gibbs_rejection ? "gibbs_rejection" : "mh_single_site";
}

std::uint64_t gibbs_site_update(const StateSpaceModel& model, std::size_t site, ParticleState& state, double eps,
                                RngStream& stream, CostCounters& counters) {
  check_site(model, site);
  const auto y = model.data();
  const bool forward = has_forward_factor(model, site);
  double log_bound = 0.0;
  if (forward) {
    const auto sup = model.log_transition_sup(state);
    if (!sup || !std::isfinite(*sup)) {
      throw UnsupportedModelError("gibbs_rejection needs a closed-form bound on the transition density");
    }
    log_bound = *sup;
  }
  for (std::uint64_t attempt = 1; attempt <= kMaxRejectionAttempts; ++attempt) {
    const SiteProposal proposal = propose_site(model, site, state, stream, counters);
    double log_accept = log_kernel_factor(y[site], proposal.observation, eps);
    if (forward) {
      log_accept += model.log_transition(state.latent[site + 1], proposal.latent, state) - log_bound;
    }
    if (std::log(stream.uniform()) < log_accept) {
      state.latent[site] = proposal.latent;
      state.pseudo_data[site] = proposal.observation;
      return attempt;
    }
  }
  throw std::runtime_error("gibbs_rejection: no acceptance after " + std::to_string(kMaxRejectionAttempts) +
                           " proposals");
}

std::uint64_t gibbs_sweep(const StateSpaceModel& model, ParticleState& state, double eps, RngStream& stream,
                          CostCounters& counters) {
  std::uint64_t total = 0;
  for (std::size_t site = 0; site < model.num_sites(); ++site) {
    total += gibbs_site_update(model, site, state, eps, stream, counters);
  }
  return total;
}

double mh_log_acceptance(const StateSpaceModel& model, std::size_t site, const ParticleState& state,
                         const SiteProposal& proposal, double eps) {
  check_site(model, site);
  const auto y = model.data();
  double log_ratio = log_kernel_factor(y[site], proposal.observation, eps) -
                     log_kernel_factor(y[site], state.pseudo_data[site], eps);
  if (has_forward_factor(model, site)) {
    const double next = state.latent[site + 1];
    log_ratio += model.log_transition(next, proposal.latent, state) -
                 model.log_transition(next, state.latent[site], state);
  }
  return log_ratio;
}

bool mh_single_site(const StateSpaceModel& model, std::size_t site, ParticleState& state, double eps,
                    RngStream& stream, CostCounters& counters) {
  check_site(model, site);
  const SiteProposal proposal = propose_site(model, site, state, stream, counters);
  const double log_ratio = mh_log_acceptance(model, site, state, proposal, eps);
  if (log_ratio >= 0.0 || std::log(stream.uniform()) < log_ratio) {
    state.latent[site] = proposal.latent;
    state.pseudo_data[site] = proposal.observation;
    return true;
  }
  return false;
}

int svm_param_update(const StochasticVolatilityModel& model, ParticleState& state, const ParamStepScales& steps,
                     RngStream& stream, CostCounters& counters) {
  int accepted = 0;
  const auto path_evals = static_cast<std::uint64_t>(model.num_sites());
  SvmParams current = model.params(state);
  double current_log_target =
      StochasticVolatilityModel::log_param_prior(current) + model.log_latent_path(state, current);

  const auto try_move = [&](SvmParams proposal, double log_jacobian) {
    ++counters.mcmc_proposals;
    counters.kernel_evals += path_evals;
    if (!(std::abs(proposal.beta) < 1.0) || !(proposal.sigma2_w > 0.0)) {
      return;
    }
    const double proposal_log_target =
        StochasticVolatilityModel::log_param_prior(proposal) + model.log_latent_path(state, proposal);
    const double log_ratio = proposal_log_target - current_log_target + log_jacobian;
    if (log_ratio >= 0.0 || std::log(stream.uniform()) < log_ratio) {
      current = proposal;
      current_log_target = proposal_log_target;
      ++accepted;
    }
  };

  SvmParams proposal = current;
  proposal.alpha += steps.alpha * stream.normal();
  try_move(proposal, 0.0);

  proposal = current;
  proposal.beta += steps.beta * stream.normal();
  try_move(proposal, 0.0);

  proposal = current;
  const double log_step = steps.log_sigma2 * stream.normal();
  proposal.sigma2_w = current.sigma2_w * std::exp(log_step);
  // Random walk on log sigma2: q(s'|s)/q(s|s') = s'/s.
  try_move(proposal, log_step);

  model.set_params(state, current);
  return accepted;
}

void apply_kernel(const MutationKernel& kernel, const StateSpaceModel& model, ParticleState& state, double eps,
                  int sweeps, RngStream& stream, CostCounters& counters) {
  const auto* svm = dynamic_cast<const StochasticVolatilityModel*>(&model);
  if (kernel.param_update == ParamUpdate::random_walk && svm == nullptr) {
    throw UnsupportedModelError("parameter updates are only defined for the stochastic volatility model");
  }
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    if (kernel.kind == KernelKind::gibbs_rejection) {
      gibbs_sweep(model, state, eps, stream, counters);
    } else {
      for (std::size_t site = 0; site < model.num_sites(); ++site) {
        mh_single_site(model, site, state, eps, stream, counters);
      }
    }
    if (kernel.param_update == ParamUpdate::random_walk) {
      svm_param_update(*svm, state, kernel.steps, stream, counters);
    }
  }
}

}  // namespace mlabc
