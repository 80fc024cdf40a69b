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

#include "mlabc/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mlabc/csv.hpp"
#include "mlabc/errors.hpp"

namespace mlabc {

RateFit fit_loglog(std::span<const RatePoint> points, double min_r_squared) {
  if (points.size() < 3) {
    throw ParameterError("fit_loglog: need at least 3 points, got " + std::to_string(points.size()));
  }
  double sx = 0.0;
  double sy = 0.0;
  for (const RatePoint& p : points) {
    if (!(p.eps > 0.0) || !(p.quantity > 0.0) || !std::isfinite(p.eps) || !std::isfinite(p.quantity)) {
      throw ParameterError("fit_loglog: eps and quantity must be finite and positive (level " +
                           std::to_string(p.level) + ", quantity " + format_double(p.quantity) + ")");
    }
    sx += std::log(p.eps);
    sy += std::log(p.quantity);
  }
  const auto n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const RatePoint& p : points) {
    const double dx = std::log(p.eps) - mx;
    const double dy = std::log(p.quantity) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw ParameterError("fit_loglog: eps values must not all coincide");
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.inconclusive = fit.r_squared < min_r_squared;
  fit.points.assign(points.begin(), points.end());
  return fit;
}

RateFit fit_loglog(std::span<const double> eps, std::span<const double> quantity, double min_r_squared) {
  if (eps.size() != quantity.size()) {
    throw DimensionError("fit_loglog: " + std::to_string(eps.size()) + " eps values for " +
                         std::to_string(quantity.size()) + " quantities");
  }
  std::vector<RatePoint> points;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    points.push_back({static_cast<int>(i), eps[i], quantity[i], 0});
  }
  return fit_loglog(points, min_r_squared);
}

std::vector<double> prop1_sup_norms(const AbcTarget& target, std::size_t grid) {
  const PseudoDataQuadrature quad(target.model(), grid);
  const ToleranceSchedule& schedule = target.schedule();
  const std::array<double, 1> y{quad.y()};
  std::vector<double> sup_norms;
  double z_prev = quad.normalizer(schedule.eps(0));
  for (int l = 1; l <= schedule.top_level(); ++l) {
    const double z_next = quad.normalizer(schedule.eps(l));
    const double ratio = z_prev / z_next;
    double worst = 0.0;
    for (const double u : quad.u_nodes()) {
      const std::array<double, 1> pseudo{u};
      const double g = std::exp(log_weight_g(schedule, l - 1, y, pseudo));
      worst = std::max(worst, std::abs(ratio * g - 1.0));
    }
    sup_norms.push_back(worst);
    z_prev = z_next;
  }
  return sup_norms;
}

RateFit verify_prop1(const AbcTarget& target, std::size_t grid) {
  const std::vector<double> sup_norms = prop1_sup_norms(target, grid);
  std::vector<RatePoint> points;
  for (std::size_t i = 0; i < sup_norms.size(); ++i) {
    const int level = static_cast<int>(i) + 1;
    points.push_back({level, target.schedule().eps(level - 1), sup_norms[i], 0});
  }
  RateFit fit = fit_loglog(points);
  fit.study = "prop1";
  return fit;
}

std::vector<double> gibbs_sweep_costs(const StateSpaceModel& model, std::span<const double> eps,
                                      const Prop2Options& options) {
  if (options.replicates < 1) {
    throw ParameterError("gibbs_sweep_costs: replicates must be >= 1");
  }
  const auto y = model.data();
  std::vector<double> means;
  for (std::size_t e = 0; e < eps.size(); ++e) {
    double total = 0.0;
    for (std::size_t r = 0; r < options.replicates; ++r) {
      RngStream stream(options.seed, derive_stream_id(r, e));
      CostCounters counters;
      ParticleState state = model.empty_state();
      model.sample_params(state, stream);
      std::copy(y.begin(), y.end(), state.pseudo_data.begin());
      std::copy(y.begin(), y.end(), state.latent.begin());
      for (int b = 0; b < options.burn_in_sweeps; ++b) {
        gibbs_sweep(model, state, eps[e], stream, counters);
      }
      total += static_cast<double>(gibbs_sweep(model, state, eps[e], stream, counters));
    }
    means.push_back(total / static_cast<double>(options.replicates));
  }
  return means;
}

RateFit verify_prop2(const StateSpaceModel& model, std::span<const double> eps, const Prop2Options& options) {
  const std::vector<double> means = gibbs_sweep_costs(model, eps, options);
  std::vector<RatePoint> points;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    points.push_back({static_cast<int>(i), eps[i], means[i], options.replicates});
  }
  RateFit fit = fit_loglog(points);
  fit.study = "prop2";
  return fit;
}

LevelTrace smc_level_means(const AbcTarget& target, const Functional& phi, std::size_t n, const SmcOptions& options,
                           RngStream& stream) {
  const int top = target.schedule().top_level();
  const auto mean_of = [&](const ParticleSystem& system) {
    double sum = 0.0;
    for (const ParticleState& state : system.particles) {
      sum += phi(state);
    }
    return sum / static_cast<double>(system.particles.size());
  };
  LevelTrace trace;
  ParticleSystem system = init_level0(target, n, stream, options.init);
  trace.means.push_back(mean_of(system));
  for (int l = 0; l < top; ++l) {
    const std::vector<double> log_weights = level_log_weights(target, l, system);
    system = resample_to(system, log_weights, n, stream, options.resampling);
    mutate(target, l + 1, system, options, stream);
    trace.means.push_back(mean_of(system));
  }
  trace.counters = system.cost_counters;
  return trace;
}

RateFit estimate_bias_rate(const AbcTarget& target, const Functional& phi, double exact,
                           const BiasRateOptions& options) {
  RngStream stream(options.seed, derive_stream_id(0, 0));
  const LevelTrace trace = smc_level_means(target, phi, options.big_n, options.smc, stream);
  std::vector<RatePoint> points;
  for (std::size_t l = 0; l < trace.means.size(); ++l) {
    const int level = static_cast<int>(l);
    points.push_back({level, target.schedule().eps(level), std::abs(trace.means[l] - exact), options.big_n});
  }
  RateFit fit = fit_loglog(points, options.min_r_squared);
  fit.study = "bias";
  return fit;
}

std::vector<double> increment_variances(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                                        const VarianceRateOptions& options) {
  if (options.replicates < 2) {
    throw ParameterError("increment_variances: replicates must be >= 2");
  }
  const std::size_t levels = plan.sizes.size();
  std::vector<double> sum(levels, 0.0);
  std::vector<double> sum_sq(levels, 0.0);
  for (std::size_t r = 0; r < options.replicates; ++r) {
    RngStream stream(options.seed, derive_stream_id(r, 0));
    const MlsmcEstimate estimate = run_mlsmc(target, phi, plan, options.smc, stream);
    for (std::size_t l = 0; l < levels; ++l) {
      sum[l] += estimate.level_increments[l];
      sum_sq[l] += estimate.level_increments[l] * estimate.level_increments[l];
    }
  }
  const auto n = static_cast<double>(options.replicates);
  std::vector<double> variances(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    const double mean = sum[l] / n;
    variances[l] = std::max(0.0, (sum_sq[l] - n * mean * mean) / (n - 1.0));
  }
  return variances;
}

RateFit estimate_variance_rate(const AbcTarget& target, const Functional& phi, const AllocationPlan& plan,
                               const VarianceRateOptions& options) {
  if (plan.sizes.size() < 4) {
    throw ParameterError("estimate_variance_rate: need L >= 4 for three bracket levels");
  }
  const std::vector<double> variances = increment_variances(target, phi, plan, options);
  std::vector<RatePoint> points;
  for (std::size_t l = 1; l < variances.size(); ++l) {
    const int level = static_cast<int>(l);
    const double per_particle = variances[l] * static_cast<double>(plan.sizes[l]);
    points.push_back({level, target.schedule().eps(level), per_particle, options.replicates});
  }
  RateFit fit = fit_loglog(points);
  fit.study = "variance";
  return fit;
}

void write_rate_csv(std::ostream& out, const RateFit& fit) {
  out << "# slope=" << format_double(fit.slope) << '\n'
      << "# intercept=" << format_double(fit.intercept) << '\n'
      << "# r_squared=" << format_double(fit.r_squared) << '\n'
      << "# inconclusive=" << (fit.inconclusive ? "true" : "false") << '\n'
      << "study,level,eps,quantity,replicates\n";
  for (const RatePoint& p : fit.points) {
    out << fit.study << ',' << p.level << ',' << format_double(p.eps) << ',' << format_double(p.quantity) << ','
        << p.replicates << '\n';
  }
}

}  // namespace mlabc
