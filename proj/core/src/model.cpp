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

#include "mlabc/model.hpp"

#include "mlabc/errors.hpp"

namespace mlabc {

ParticleState StateSpaceModel::empty_state() const {
  ParticleState state;
  state.pseudo_data.assign(num_sites(), 0.0);
  state.latent.assign(num_sites() + num_params(), 0.0);
  return state;
}

void StateSpaceModel::sample_params(ParticleState& state, RngStream& stream) const {
  (void)state;
  (void)stream;
}

ParticleState StateSpaceModel::simulate_prior(RngStream& stream, CostCounters& counters) const {
  ParticleState state = empty_state();
  sample_params(state, stream);
  for (std::size_t i = 0; i < num_sites(); ++i) {
    state.latent[i] = sample_latent(i, state, stream);
    state.pseudo_data[i] = sample_observation(i, state.latent[i], state, stream);
    ++counters.model_simulations;
  }
  return state;
}

AbcTarget::AbcTarget(std::shared_ptr<const StateSpaceModel> model, ToleranceSchedule schedule)
    : model_(std::move(model)), schedule_(std::move(schedule)) {
  if (!model_) {
    throw ParameterError("target: null model");
  }
}

}  // namespace mlabc
