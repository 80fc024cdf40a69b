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

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "mlabc/allocation.hpp"
#include "mlabc/errors.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/quadrature.hpp"
#include "mlabc/smc.hpp"
#include "mlabc/toy_model.hpp"
#include "oracles.hpp"

namespace {

using namespace mlabc;

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  std::size_t n = 0;
  [[nodiscard]] double se() const { return std::sqrt(var / static_cast<double>(n)); }
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m.n);
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(m.n - 1);
  return m;
}

std::shared_ptr<const CompactToyModel> toy() { return std::make_shared<const CompactToyModel>(); }

const Functional kTheta = [](const ParticleState& s) { return s.latent[0]; };

std::shared_ptr<const LinearGaussianSsm> lg_model(std::size_t n) {
  RngStream stream(7, 0);
  auto path = simulate_lgssm(n, 0.25, 0.25, stream);
  return std::make_shared<const LinearGaussianSsm>(path.data, 0.25, 0.25);
}

ParticleSystem numbered_system(std::size_t n) {
  ParticleSystem system;
  for (std::size_t i = 0; i < n; ++i) {
    system.particles.push_back({{0.0}, {static_cast<double>(i)}});
  }
  return system;
}

TEST(InitLevel0, HugeToleranceAcceptsAlmostEverything) {
  const AbcTarget target(lg_model(3), ToleranceSchedule::geometric(1e6, 2, 1));
  RngStream s(1, 0);
  const auto system = init_level0(target, 10'000, s);
  EXPECT_EQ(system.particles.size(), 10'000U);
  EXPECT_LT(static_cast<double>(system.init_attempts) / 10'000.0, 1.01);
}

TEST(InitLevel0, AcceptedMeanMatchesQuadrature) {
  const auto model = toy();
  const AbcTarget target(model, ToleranceSchedule::geometric(0.5, 2, 1));
  const PseudoDataQuadrature quad(*model, 1024);
  const double z = quad.normalizer(0.5);
  const double mean_u = quad.moment(0.5, [](double u, double) { return u; }) / z;
  const double second = quad.moment(0.5, [](double u, double) { return u * u; }) / z;
  RngStream s(2, 0);
  const auto system = init_level0(target, 100'000, s);
  double sum = 0.0;
  for (const auto& p : system.particles) sum += p.pseudo_data[0];
  const double se = std::sqrt((second - mean_u * mean_u) / 1e5);
  EXPECT_NEAR(sum / 1e5, mean_u, 3.0 * se);
}

TEST(InitLevel0, CountersTrackAttempts) {
  const AbcTarget target(toy(), ToleranceSchedule::geometric(0.2, 2, 1));
  RngStream s(3, 0);
  const auto system = init_level0(target, 500, s);
  EXPECT_EQ(system.cost_counters.model_simulations, system.init_attempts);
  EXPECT_GE(system.init_attempts, 500U);
}

TEST(InitLevel0, InfeasibleToleranceThrows) {
  const AbcTarget target(lg_model(10), ToleranceSchedule::geometric(1e-4, 2, 1));
  RngStream s(4, 0);
  InitOptions options;
  options.acceptance_floor = 0.01;
  options.floor_check_attempts = 10'000;
  EXPECT_THROW(init_level0(target, 100, s, options), InitializationError);
}

TEST(ResampleTo, UniformWeightsGiveUniformCopies) {
  const std::size_t n = 10;
  const auto system = numbered_system(n);
  const std::vector<double> log_w(n, 0.0);
  std::vector<double> counts(n, 0.0);
  RngStream s(5, 0);
  for (int rep = 0; rep < 10'000; ++rep) {
    const auto out = resample_to(system, log_w, n, s);
    for (const auto& p : out.particles) counts[static_cast<std::size_t>(p.latent[0])] += 1.0;
  }
  const double expected = 10'000.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 21.67);  // chi^2_9 at p = 0.01
}

TEST(ResampleTo, ZeroWeightNeverSelected) {
  const auto system = numbered_system(5);
  const double ninf = -std::numeric_limits<double>::infinity();
  const std::vector<double> log_w{0.0, ninf, 0.0, 0.0, 0.0};
  RngStream s(6, 0);
  for (auto scheme : {ResamplingScheme::multinomial, ResamplingScheme::systematic}) {
    for (int rep = 0; rep < 2000; ++rep) {
      for (const auto& p : resample_to(system, log_w, 7, s, scheme).particles) {
        ASSERT_NE(p.latent[0], 1.0);
      }
    }
  }
}

TEST(ResampleTo, PreservesWeightedMean) {
  const std::size_t n = 50;
  const auto system = numbered_system(n);
  std::vector<double> log_w(n);
  RngStream s(7, 0);
  for (auto& w : log_w) w = 2.0 * s.normal();
  double wsum = 0.0;
  double wphi = 0.0;
  double wphi2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::exp(log_w[i]);
    wsum += w;
    wphi += w * static_cast<double>(i);
    wphi2 += w * static_cast<double>(i * i);
  }
  const double target_mean = wphi / wsum;
  const double var = wphi2 / wsum - target_mean * target_mean;
  const std::size_t count = 40;
  const int trials = 400;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto out = resample_to(system, log_w, count, s);
    for (const auto& p : out.particles) total += p.latent[0];
  }
  const double mean = total / (count * trials);
  EXPECT_NEAR(mean, target_mean, 3.0 * std::sqrt(var / (count * trials)));
}

TEST(ResampleTo, Errors) {
  const auto system = numbered_system(3);
  const double ninf = -std::numeric_limits<double>::infinity();
  RngStream s(8, 0);
  EXPECT_THROW(resample_to(system, std::vector<double>{ninf, ninf, ninf}, 3, s), DegenerateWeightsError);
  EXPECT_THROW(resample_to(system, std::vector<double>{0.0, 0.0}, 3, s), DimensionError);
  EXPECT_THROW(resample_to(system, std::vector<double>{0.0, 0.0, 0.0}, 0, s), ParameterError);
}

TEST(ResampleTo, ShrinksPopulation) {
  const auto system = numbered_system(100);
  RngStream s(9, 0);
  EXPECT_EQ(resample_to(system, std::vector<double>(100, 0.0), 17, s).particles.size(), 17U);
}

TEST(RunMlsmc, ConstantScheduleGivesZeroBrackets) {
  const AbcTarget target(toy(), ToleranceSchedule::from_values({0.5, 0.5, 0.5, 0.5}));
  auto plan = allocate_samples(0.05, ToleranceSchedule::geometric(0.5, 2, 3), RateTriple{});
  plan.schedule = target.schedule();
  RngStream s(10, 0);
  const auto est = run_mlsmc(target, kTheta, plan, SmcOptions{}, s);
  ASSERT_EQ(est.level_increments.size(), 3U);
  EXPECT_EQ(est.level_increments[1], 0.0);
  EXPECT_EQ(est.level_increments[2], 0.0);
  // With G = 1 the level-0 term is the plain eta_0 mean of the initial particles.
  RngStream again(10, 0);
  const auto system = init_level0(target, plan.sizes[0], again);
  double sum = 0.0;
  for (const auto& p : system.particles) sum += p.latent[0];
  EXPECT_NEAR(est.value, sum / static_cast<double>(plan.sizes[0]), 1e-12);
}

TEST(RunMlsmc, ValueIsSumOfIncrements) {
  const AbcTarget target(lg_model(5), ToleranceSchedule::geometric(2.0, 2, 4));
  const auto plan = allocate_samples(0.1, target.schedule(), RateTriple{});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RngStream s(seed, 0);
    const auto est = run_mlsmc(target, [](const ParticleState& p) { return p.latent[5]; }, plan, SmcOptions{}, s);
    const double sum = std::accumulate(est.level_increments.begin(), est.level_increments.end(), 0.0);
    EXPECT_NEAR(est.value, sum, 1e-12 * std::max(1.0, std::abs(sum)));
    EXPECT_EQ(est.level_increments.size(), plan.sizes.size());
  }
}

TEST(RunMlsmc, SingleLevelMatchesRejectionSampling) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 1);
  const AbcTarget target(toy(), schedule);
  const auto plan = allocate_samples(0.05, schedule, RateTriple{});
  std::vector<double> estimates;
  for (int r = 0; r < 50; ++r) {
    RngStream s(100, static_cast<std::uint64_t>(r));
    estimates.push_back(run_mlsmc(target, kTheta, plan, SmcOptions{}, s).value);
  }
  const auto oracle = moments(oracle::toy_rejection_theta(schedule.eps(1), 20'000, 77));
  const auto ml = moments(estimates);
  EXPECT_NEAR(ml.mean, oracle.mean, 3.0 * std::hypot(ml.se(), oracle.se()));
}

TEST(RunMlsmc, LinearGaussianMeanMatchesLargeSmcProxy) {
  const auto model = lg_model(10);
  const AbcTarget target(model, ToleranceSchedule::geometric(2.0, 2, 5));
  const Functional phi = [](const ParticleState& p) { return p.latent[10]; };
  const auto plan = allocate_samples(0.05, target.schedule(), RateTriple{});
  std::vector<double> estimates;
  for (int r = 0; r < 50; ++r) {
    RngStream s(200, static_cast<std::uint64_t>(r));
    estimates.push_back(run_mlsmc(target, phi, plan, SmcOptions{}, s).value);
  }
  SmcOptions mixing;
  mixing.sweeps.sweeps = 20;
  RngStream s(201, 0);
  const double proxy = run_smc_baseline(target, phi, 5000, mixing, s).value;
  const auto ml = moments(estimates);
  EXPECT_NEAR(ml.mean, proxy, 3.0 * ml.se());
}

TEST(RunMlsmc, Deterministic) {
  const AbcTarget target(lg_model(5), ToleranceSchedule::geometric(2.0, 2, 4));
  const auto plan = allocate_samples(0.1, target.schedule(), RateTriple{});
  const Functional phi = [](const ParticleState& p) { return p.latent[5]; };
  RngStream a(11, 3);
  RngStream b(11, 3);
  const auto ea = run_mlsmc(target, phi, plan, SmcOptions{}, a);
  const auto eb = run_mlsmc(target, phi, plan, SmcOptions{}, b);
  EXPECT_EQ(ea.value, eb.value);
  EXPECT_EQ(ea.level_increments, eb.level_increments);
  EXPECT_EQ(ea.total_cost_units, eb.total_cost_units);
}

TEST(RunMlsmc, RejectsIncreasingSizes) {
  const AbcTarget target(toy(), ToleranceSchedule::geometric(1.0, 2, 3));
  auto plan = allocate_samples(0.1, target.schedule(), RateTriple{});
  plan.sizes = {10, 20, 5};
  RngStream s(12, 0);
  EXPECT_THROW(run_mlsmc(target, kTheta, plan, SmcOptions{}, s), ParameterError);
}

TEST(RunMlsmc, QuadratureTelescopingReproducesFinestMean) {
  const auto model = toy();
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 5);
  const PseudoDataQuadrature quad(*model, 1024);
  const double y = model->data()[0];
  const auto eta = [&](int l, auto&& f) { return quad.moment(schedule.eps(l), f) / quad.normalizer(schedule.eps(l)); };
  const auto g = [&](int l, double u) {
    const std::vector<double> ys{y};
    const std::vector<double> us{u};
    return std::exp(log_weight_g(schedule, l, ys, us));
  };
  const auto phi = [](double, double theta) { return theta; };
  // Level-0 term and brackets with every empirical measure replaced by its exact expectation.
  double value = eta(0, [&](double u, double th) { return phi(u, th) * g(0, u); }) /
                 eta(0, [&](double u, double) { return g(0, u); });
  for (int l = 1; l < 5; ++l) {
    value += eta(l, [&](double u, double th) { return phi(u, th) * g(l, u); }) /
                 eta(l, [&](double u, double) { return g(l, u); }) -
             eta(l, phi);
  }
  EXPECT_NEAR(value, eta(5, phi), 1e-6);
}

TEST(RunMlsmc, BracketVarianceDecaysOnToy) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 5);
  const AbcTarget target(toy(), schedule);
  auto plan = allocate_samples(0.1, schedule, RateTriple{});
  plan.sizes.assign(5, 200);
  std::vector<std::vector<double>> brackets(5);
  for (int r = 0; r < 60; ++r) {
    RngStream s(300, static_cast<std::uint64_t>(r));
    const auto est = run_mlsmc(target, kTheta, plan, SmcOptions{}, s);
    for (std::size_t l = 1; l < 5; ++l) brackets[l].push_back(est.level_increments[l]);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t l = 1; l < 5; ++l) {
    const double v = moments(brackets[l]).var;
    if (l > 1) {
      EXPECT_LT(v, std::exp(ys.back()));
    }
    xs.push_back(std::log(schedule.eps(static_cast<int>(l))));
    ys.push_back(std::log(v));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / 4.0;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / 4.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  EXPECT_GE(sxy / sxx, 1.5);
}

TEST(RunMlsmc, LevelZeroVarianceHalvesWhenSizeDoubles) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 2);
  const AbcTarget target(toy(), schedule);
  auto plan = allocate_samples(0.1, schedule, RateTriple{});
  std::vector<double> v;
  for (std::size_t n0 : {100U, 200U}) {
    plan.sizes = {n0, 1};
    std::vector<double> zeros;
    for (int r = 0; r < 400; ++r) {
      RngStream s(400 + n0, static_cast<std::uint64_t>(r));
      zeros.push_back(run_mlsmc(target, kTheta, plan, SmcOptions{}, s).level_increments[0]);
    }
    v.push_back(moments(zeros).var);
  }
  EXPECT_NEAR(v[0] / v[1], 2.0, 0.6);
}

TEST(RunSmcBaseline, ConstantScheduleIsLevelZeroMean) {
  const AbcTarget target(toy(), ToleranceSchedule::from_values({0.5, 0.5, 0.5}));
  std::vector<double> estimates;
  for (int r = 0; r < 100; ++r) {
    RngStream s(500, static_cast<std::uint64_t>(r));
    estimates.push_back(run_smc_baseline(target, kTheta, 200, SmcOptions{}, s).value);
  }
  const auto oracle = moments(oracle::toy_rejection_theta(0.5, 20'000, 501));
  const auto base = moments(estimates);
  EXPECT_NEAR(base.mean, oracle.mean, 3.0 * std::hypot(base.se(), oracle.se()));
}

TEST(RunSmcBaseline, CostIncreasesWithLevels) {
  const auto model = lg_model(5);
  double prev = 0.0;
  for (int top = 1; top <= 4; ++top) {
    const AbcTarget target(model, ToleranceSchedule::geometric(2.0, 2, top));
    RngStream s(600, 0);
    const auto est = run_smc_baseline(target, [](const ParticleState& p) { return p.latent[5]; }, 200, SmcOptions{}, s);
    EXPECT_GT(est.total_cost_units, prev);
    EXPECT_EQ(est.level_cost_units.size(), static_cast<std::size_t>(top) + 1);
    prev = est.total_cost_units;
  }
}

TEST(MatchBaselineSize, OneParticleCostGivesOne) {
  const std::vector<double> units{10.0, 3.0, 4.0};
  EXPECT_EQ(match_baseline_size(17.0, units), 1U);
  EXPECT_EQ(match_baseline_size(1.0, units), 1U);
}

TEST(MatchBaselineSize, LinearInBudget) {
  const auto schedule = ToleranceSchedule::geometric(2.0, 2, 5);
  for (double budget : {1e4, 3.3e5, 7e6}) {
    const auto a = match_baseline_size(budget, schedule, 1.0, SweepPolicy{});
    const auto b = match_baseline_size(2.0 * budget, schedule, 1.0, SweepPolicy{});
    EXPECT_LE(std::abs(static_cast<double>(b) - 2.0 * static_cast<double>(a)), 1.0);
  }
}

TEST(MatchBaselineSize, RealizedCostCloseToMultilevel) {
  const auto model = lg_model(10);
  const AbcTarget target(model, ToleranceSchedule::geometric(2.0, 2, 5));
  const Functional phi = [](const ParticleState& p) { return p.latent[10]; };
  const auto plan = allocate_samples(0.1, target.schedule(), RateTriple{});
  RngStream s(700, 0);
  const auto ml = run_mlsmc(target, phi, plan, SmcOptions{}, s);
  const auto n_fixed = match_baseline_size(ml.total_cost_units, baseline_unit_costs(ml));
  RngStream t(701, 0);
  const auto base = run_smc_baseline(target, phi, n_fixed, SmcOptions{}, t);
  EXPECT_NEAR(base.total_cost_units / ml.total_cost_units, 1.0, 0.25);
}

TEST(SweepPolicy, InverseEpsilonMode) {
  SweepPolicy p{SweepsMode::inverse_eps, 1};
  EXPECT_EQ(p.sweeps_at(0.25), 4);
  EXPECT_EQ(p.sweeps_at(0.3), 4);
  EXPECT_EQ(p.sweeps_at(2.0), 1);
  SweepPolicy fixed{SweepsMode::fixed, 3};
  EXPECT_EQ(fixed.sweeps_at(0.01), 3);
}

}  // namespace
