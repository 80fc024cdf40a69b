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

// Hot paths of the sampler: kernel evaluation, resampling, one MH sweep and
// level-0 initialization.

#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "mlabc/abc.hpp"
#include "mlabc/kernels.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/smc.hpp"

namespace {

using namespace mlabc;

std::shared_ptr<const LinearGaussianSsm> lg_model(std::size_t n) {
  RngStream s(7, 0);
  return std::make_shared<const LinearGaussianSsm>(simulate_lgssm(n, 0.25, 0.25, s).data, 0.25, 0.25);
}

void BM_LogKernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream s(1, 0);
  std::vector<double> y(n);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = s.normal();
    u[i] = y[i] + s.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_kernel(y, u, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogKernel)->Arg(11)->Arg(533);

void BM_Resample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ParticleSystem system;
  RngStream s(2, 0);
  std::vector<double> log_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    system.particles.push_back({std::vector<double>(11, 0.0), std::vector<double>(11, 0.0)});
    log_w[i] = s.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_to(system, log_w, n, s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Resample)->Arg(1000)->Arg(10000);

void BM_MhSweep(benchmark::State& state) {
  const auto model = lg_model(static_cast<std::size_t>(state.range(0)));
  ParticleState particle = model->empty_state();
  RngStream s(3, 0);
  CostCounters counters;
  for (auto _ : state) {
    for (std::size_t site = 0; site < model->num_sites(); ++site) {
      mh_single_site(*model, site, particle, 0.1, s, counters);
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(model->num_sites()));
}
BENCHMARK(BM_MhSweep)->Arg(10)->Arg(100);

void BM_InitLevel0(benchmark::State& state) {
  const AbcTarget target(lg_model(10), ToleranceSchedule::geometric(2.0, 2, 5));
  RngStream s(4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(init_level0(target, static_cast<std::size_t>(state.range(0)), s));
  }
}
BENCHMARK(BM_InitLevel0)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
