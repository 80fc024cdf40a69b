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

// Acceptance runner: one [PASS]/[FAIL] line per criterion, nonzero exit if
// any fails. Registered with ctest as "acceptance".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "mlabc/allocation.hpp"
#include "mlabc/experiment.hpp"
#include "mlabc/kernels.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/smc.hpp"
#include "mlabc/toy_model.hpp"
#include "oracles.hpp"

namespace {

using namespace mlabc;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome timed_study(StudyResult (*study)(const ExperimentConfig&), double budget_s) {
  const auto start = std::chrono::steady_clock::now();
  const StudyResult result = study(default_config(ModelKind::lgssm));
  const double took = seconds_since(start);
  std::ostringstream d;
  d << result.summary << "; " << took << " s (budget " << budget_s << " s)";
  return {result.status == StudyStatus::pass && took < budget_s, d.str()};
}

Outcome criterion_allocation() {
  const auto table = allocate_samples(0.1, ToleranceSchedule::geometric(1.0, 2, 5), RateTriple{});
  const std::vector<std::size_t> expected{154, 28, 5, 1, 1};
  bool ok = table.sizes == expected;
  int violations = 0;
  RngStream s(99, 0);
  for (int instance = 0; instance < 100; ++instance) {
    const int top = 1 + static_cast<int>(4.0 * s.uniform());
    const auto schedule = ToleranceSchedule::geometric(0.5 + s.uniform(), 2 + static_cast<int>(2.0 * s.uniform()), top);
    const RateTriple rates{1.0, 1.0 + 4.0 * s.uniform(), 0.5 + s.uniform()};
    const double eps = std::pow(10.0, -0.5 - 2.0 * s.uniform());
    const auto plan = allocate_samples(eps, schedule, rates);
    for (std::size_t l = 0; l < plan.sizes.size(); ++l) {
      for (int delta : {-1, 1}) {
        auto sizes = plan.sizes;
        if (delta < 0 && sizes[l] == 1) continue;
        sizes[l] = static_cast<std::size_t>(static_cast<long long>(sizes[l]) + delta);
        const bool cheaper = oracle::plan_cost(sizes, schedule, rates.zeta) < plan.predicted_cost_units;
        const bool feasible = oracle::plan_variance(sizes, schedule, rates.beta) <= plan.predicted_variance;
        violations += (cheaper && feasible) ? 1 : 0;
      }
    }
  }
  ok = ok && violations == 0;
  std::ostringstream d;
  d << "sizes";
  for (auto n : table.sizes) d << ' ' << n;
  d << "; perturbation violations " << violations << " over 100 instances";
  return {ok, d.str()};
}

Outcome criterion_headline() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig config = default_config(ModelKind::lgssm);
  const auto records = run_benchmark(config, make_problem(config));
  const double took = seconds_since(start);
  std::map<double, std::pair<double, double>> mse;  // eps -> (mlsmc, smc)
  std::map<double, std::pair<double, double>> cost;
  for (const auto& r : records) {
    auto& m = mse[r.epsilon_target];
    auto& c = cost[r.epsilon_target];
    const double w = 1.0 / static_cast<double>(config.replicates);
    (r.method == Method::mlsmc ? m.first : m.second) += w * r.squared_error;
    (r.method == Method::mlsmc ? c.first : c.second) += w * r.cost_units;
  }
  int wins = 0;
  std::ostringstream d;
  d << "eps: mse_mlsmc/mse_smc (cost ratio)";
  for (const auto& [eps, m] : mse) {
    wins += m.first <= m.second ? 1 : 0;
    d << "; " << eps << ": " << m.first << '/' << m.second << " (" << cost[eps].second / cost[eps].first << ')';
  }
  const auto& targets = config.epsilon_targets;
  std::vector<double> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  const bool smallest_two = mse[sorted[0]].first < mse[sorted[0]].second && mse[sorted[1]].first < mse[sorted[1]].second;
  d << "; wins " << wins << "/6; strictly lower at two smallest: " << (smallest_two ? "yes" : "no") << "; " << took
    << " s";
  return {wins >= 4 && smallest_two && took < 600.0 && records.size() == 120, d.str()};
}

Outcome criterion_kalman() {
  RngStream s(4, 0);
  double worst = 0.0;
  for (int instance = 0; instance < 20; ++instance) {
    const double s2v = 0.2 + 1.8 * s.uniform();
    const double s2w = 0.2 + 1.8 * s.uniform();
    const auto path = simulate_lgssm(3, s2v, s2w, s);
    const LinearGaussianSsm model(path.data, s2v, s2w);
    worst = std::max(worst, std::abs(kalman_posterior_mean(model, 3) - oracle::grid_posterior_mean(path.data, s2v, s2w)));
  }
  std::ostringstream d;
  d << "max |kalman - quadrature| over 20 instances " << worst;
  return {worst < 1e-6, d.str()};
}

Outcome criterion_consistency() {
  const auto toy = std::make_shared<const CompactToyModel>();
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 1);
  const AbcTarget target(toy, schedule);
  const auto plan = allocate_samples(0.05, schedule, RateTriple{});
  const Functional theta = [](const ParticleState& p) { return p.latent[0]; };
  std::vector<double> estimates;
  for (int r = 0; r < 50; ++r) {
    RngStream s(100, static_cast<std::uint64_t>(r));
    estimates.push_back(run_mlsmc(target, theta, plan, SmcOptions{}, s).value);
  }
  const auto direct = oracle::toy_rejection_theta(schedule.eps(1), 20'000, 77);
  const double gap = std::abs(oracle::mean(estimates) - oracle::mean(direct));
  const double se = std::hypot(oracle::standard_error(estimates), oracle::standard_error(direct));

  const AbcTarget flat(toy, ToleranceSchedule::from_values({0.5, 0.5, 0.5, 0.5}));
  auto flat_plan = allocate_samples(0.05, ToleranceSchedule::geometric(0.5, 2, 3), RateTriple{});
  flat_plan.schedule = flat.schedule();
  bool zero = true;
  for (int r = 0; r < 10; ++r) {
    RngStream s(101, static_cast<std::uint64_t>(r));
    const auto est = run_mlsmc(flat, theta, flat_plan, SmcOptions{}, s);
    for (std::size_t l = 1; l < est.level_increments.size(); ++l) zero = zero && est.level_increments[l] == 0.0;
  }
  std::ostringstream d;
  d << "L=1 gap " << gap << " vs 3 SE " << 3.0 * se << "; constant-schedule brackets all zero: " << (zero ? "yes" : "no");
  return {gap <= 3.0 * se && zero, d.str()};
}

Outcome criterion_invariance() {
  RngStream data(21, 0);
  auto model = std::make_shared<const LinearGaussianSsm>(simulate_lgssm(1, 0.25, 0.25, data).data, 0.25, 0.25);
  bool ok = true;
  std::ostringstream d;
  for (KernelKind kind : {KernelKind::gibbs_rejection, KernelKind::mh_single_site}) {
    for (double eps : {0.5, 0.1}) {
      const AbcTarget target(model, ToleranceSchedule::geometric(eps, 2, 1));
      const std::size_t n = 4000;
      RngStream a(22, 0);
      auto moved = init_level0(target, n, a);
      MutationKernel kernel;
      kernel.kind = kind;
      CostCounters c;
      std::vector<double> after;
      for (auto& p : moved.particles) {
        apply_kernel(kernel, *model, p, eps, 50, a, c);
        after.push_back(p.latent[1]);
      }
      RngStream b(23, 0);
      std::vector<double> reference;
      for (const auto& p : init_level0(target, n, b).particles) reference.push_back(p.latent[1]);
      const double z = (oracle::mean(after) - oracle::mean(reference)) /
                       std::hypot(oracle::standard_error(after), oracle::standard_error(reference));
      ok = ok && std::abs(z) <= 3.0;
      d << to_string(kind) << "@" << eps << " z=" << z << "; ";
    }
  }
  return {ok, d.str()};
}

Outcome criterion_reproducible() {
  const fs::path root = fs::temp_directory_path() / "mlabc_acceptance_repro";
  fs::remove_all(root);
  ExperimentConfig config = default_config(ModelKind::lgssm);
  config.epsilon_targets = {0.4, 0.1};
  config.replicates = 3;
  std::vector<std::string> bodies;
  for (const char* run : {"a", "b"}) {
    config.output_dir = root / run;
    cmd_benchmark(config);
    std::ifstream in(config.output_dir / "benchmark.csv", std::ios::binary);
    bodies.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  fs::remove_all(root);
  const bool same = !bodies[0].empty() && bodies[0] == bodies[1];
  return {same, std::to_string(bodies[0].size()) + " bytes, identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Z-ratio sup-norm rate on the compact toy", [] { return timed_study(study_prop1, 60.0); }},
      {2, "Gibbs sweep cost rate and horizon scaling", [] { return timed_study(study_prop2, 120.0); }},
      {3, "bias rate of the additive functional", [] { return timed_study(study_bias, 300.0); }},
      {4, "allocation table and perturbation optimality", criterion_allocation},
      {5, "MLSMC vs cost-matched SMC on lgssm n=10", criterion_headline},
      {6, "Kalman mean vs tensor quadrature", criterion_kalman},
      {7, "estimator consistency and zero brackets", criterion_consistency},
      {8, "kernel invariance for both kernels", criterion_invariance},
      {9, "byte-identical benchmark CSV", criterion_reproducible},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name << " -- "
              << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
