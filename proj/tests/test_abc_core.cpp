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
#include <memory>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "mlabc/abc.hpp"
#include "mlabc/errors.hpp"
#include "mlabc/linear_gaussian.hpp"
#include "mlabc/model.hpp"
#include "mlabc/quadrature.hpp"
#include "mlabc/rng.hpp"
#include "mlabc/toy_model.hpp"

namespace {

using namespace mlabc;

TEST(KernelEval, ZeroDiscrepancyIsOne) {
  const std::vector<double> y{0.3, -1.2, 4.0};
  for (double eps : {1e-6, 0.1, 1.0, 1e6}) {
    EXPECT_DOUBLE_EQ(kernel_eval(y, y, eps), 1.0);
  }
}

TEST(KernelEval, UnitStandardizedDiscrepancyIsHalf) {
  const std::vector<double> y{1.0};
  const std::vector<double> u{1.25};
  EXPECT_NEAR(kernel_eval(y, u, 0.25), 0.5, 1e-15);
}

TEST(KernelEval, TwoSiteHandValue) {
  const std::vector<double> y{1.0, 0.5};
  const std::vector<double> u{0.0, 0.0};
  EXPECT_NEAR(kernel_eval(y, u, 0.5), 0.1, 1e-15);
}

TEST(KernelEval, LengthMismatchThrows) {
  const std::vector<double> y{1.0, 2.0};
  const std::vector<double> u{1.0};
  EXPECT_THROW(kernel_eval(y, u, 1.0), DimensionError);
}

TEST(KernelEval, LogSpaceAvoidsUnderflow) {
  const std::vector<double> y(25, 0.0);
  const std::vector<double> u(25, 1e3);
  const double lk = log_kernel(y, u, 1e-3);
  EXPECT_TRUE(std::isfinite(lk));
  EXPECT_NEAR(lk, -25.0 * std::log1p(1e12), 1e-6);
}

TEST(KernelEval, MonotoneInDiscrepancyAndTolerance) {
  RngStream s(3, 0);
  for (int trial = 0; trial < 10'000; ++trial) {
    const std::vector<double> y{s.normal(), s.normal()};
    std::vector<double> u{y[0] + s.normal(), y[1] + s.normal()};
    const double eps = 0.01 + s.uniform();
    std::vector<double> further = u;
    further[trial % 2] += (u[trial % 2] > y[trial % 2] ? 1.0 : -1.0) * (0.01 + s.uniform());
    ASSERT_LT(log_kernel(y, further, eps), log_kernel(y, u, eps));
    ASSERT_GT(log_kernel(y, u, eps * 1.5), log_kernel(y, u, eps));
  }
}

TEST(LogWeight, ZeroAtExactMatch) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 3);
  const std::vector<double> y{0.5, 0.7};
  for (int l = 0; l < 3; ++l) {
    EXPECT_EQ(log_weight_g(schedule, l, y, y), 0.0);
  }
}

TEST(LogWeight, HandEvaluatedRatio) {
  const auto schedule = ToleranceSchedule::from_values({0.5, 0.25});
  const std::vector<double> y{1.0};
  const std::vector<double> u{0.0};
  const double expected = std::log((0.0625 / 1.0625) * (1.25 / 0.25));
  EXPECT_NEAR(log_weight_g(schedule, 0, y, u), expected, 1e-14);
  EXPECT_NEAR(std::exp(expected), 0.29411764705882354, 1e-14);
}

TEST(LogWeight, LevelOutOfRangeThrows) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 2);
  const std::vector<double> y{0.0};
  EXPECT_THROW(log_weight_g(schedule, 2, y, y), IndexError);
  EXPECT_THROW(log_weight_g(schedule, -1, y, y), IndexError);
}

TEST(LogWeight, BoundsHoldForRandomStates) {
  const int n = 3;
  const int m = 2;
  const auto schedule = ToleranceSchedule::geometric(1.0, m, 5);
  const double floor = -2.0 * n * std::log(static_cast<double>(m));
  RngStream s(5, 0);
  std::vector<double> y(n);
  std::vector<double> u(n);
  std::vector<double> lo(5, 0.0);
  std::vector<double> hi(5, -1e300);
  for (int trial = 0; trial < 100'000; ++trial) {
    const int l = trial % 5;
    for (int i = 0; i < n; ++i) {
      y[i] = s.normal();
      // |y - u| / eps_l log-uniform over six decades.
      const double z = std::pow(10.0, -3.0 + 6.0 * s.uniform());
      u[i] = y[i] + (s.uniform() < 0.5 ? -1.0 : 1.0) * z * schedule.eps(l);
    }
    const double lg = log_weight_g(schedule, l, y, u);
    ASSERT_GE(lg, floor - 1e-12);
    ASSERT_LE(lg, 1e-12);
    lo[l] = std::min(lo[l], lg);
    hi[l] = std::max(hi[l], lg);
  }
  const auto [lo_min, lo_max] = std::minmax_element(lo.begin(), lo.end());
  const auto [hi_min, hi_max] = std::minmax_element(hi.begin(), hi.end());
  EXPECT_LT(std::abs(std::exp(*lo_max) - std::exp(*lo_min)) / std::exp(*lo_max), 0.1);
  EXPECT_LT(std::abs(std::exp(*hi_max) - std::exp(*hi_min)) / std::exp(*hi_max), 0.1);
}

TEST(Schedule, UnitBaseFiveLevels) {
  const auto s = make_schedule(1.0, 2, 5);
  const std::vector<double> expected{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
  ASSERT_EQ(s.top_level(), 5);
  for (int l = 0; l <= 5; ++l) {
    EXPECT_DOUBLE_EQ(s.eps(l), expected[static_cast<std::size_t>(l)]);
  }
}

TEST(Schedule, OneLevel) {
  const auto s = make_schedule(2.0, 2, 1);
  EXPECT_DOUBLE_EQ(s.eps(0), 2.0);
  EXPECT_DOUBLE_EQ(s.eps(1), 1.0);
}

TEST(Schedule, RatioInvariance) {
  for (int m : {2, 3, 7}) {
    const auto s = make_schedule(3.7, m, 8);
    for (int l = 1; l <= 8; ++l) {
      EXPECT_NEAR(s.eps(l - 1) / s.eps(l), m, 1e-12 * m);
      EXPECT_GT(s.eps(l - 1), s.eps(l));
    }
  }
}

TEST(Schedule, DomainErrors) {
  EXPECT_THROW(make_schedule(0.0, 2, 3), ParameterError);
  EXPECT_THROW(make_schedule(1.0, 1, 3), ParameterError);
  EXPECT_THROW(make_schedule(1.0, 2, 0), ParameterError);
  EXPECT_THROW(ToleranceSchedule::from_values({0.5, 1.0}), ParameterError);
  EXPECT_NO_THROW(ToleranceSchedule::from_values({0.5, 0.5, 0.5}));
  EXPECT_THROW((void)make_schedule(1.0, 2, 3).eps(4), IndexError);
}

// Z(eps) for the default toy by nested adaptive Gauss-Kronrod, using an
// independent truncated-normal density.
double toy_normalizer(const CompactToyConfig& c, double eps) {
  boost::math::quadrature::gauss_kronrod<double, 31> gk;
  const double sd = c.noise_sd;
  auto phi = [](double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); };
  auto inner = [&](double u) {
    auto f = [&](double theta) {
      const double mass = phi((c.u_hi - theta) / sd) - phi((c.u_lo - theta) / sd);
      const double dens = std::exp(-0.5 * (u - theta) * (u - theta) / (sd * sd)) / (sd * std::sqrt(2.0 * std::numbers::pi));
      return dens / mass / (c.theta_hi - c.theta_lo);
    };
    return gk.integrate(f, c.theta_lo, c.theta_hi, 15, 1e-14);
  };
  auto outer = [&](double u) { return inner(u) / (1.0 + ((c.y - u) / eps) * ((c.y - u) / eps)); };
  return gk.integrate(outer, c.u_lo, c.u_hi, 15, 1e-14);
}

TEST(ZRatio, EqualTolerancesGiveOne) {
  const AbcTarget target(std::make_shared<CompactToyModel>(), ToleranceSchedule::from_values({0.5, 0.5}));
  EXPECT_NEAR(z_ratio_quadrature(target, 1), 1.0, 1e-8);
}

TEST(ZRatio, MatchesAdaptiveQuadrature) {
  const CompactToyConfig config;
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 4);
  const AbcTarget target(std::make_shared<CompactToyModel>(config), schedule);
  for (int l = 1; l <= 4; ++l) {
    const double oracle = toy_normalizer(config, schedule.eps(l - 1)) / toy_normalizer(config, schedule.eps(l));
    EXPECT_NEAR(z_ratio_quadrature(target, l), oracle, 1e-6) << "level " << l;
  }
}

TEST(ZRatio, BoundedAcrossLevels) {
  const auto schedule = ToleranceSchedule::geometric(1.0, 2, 8);
  const AbcTarget target(std::make_shared<CompactToyModel>(), schedule);
  std::vector<double> ratios;
  for (int l = 1; l <= 8; ++l) {
    ratios.push_back(z_ratio_quadrature(target, l, 1024));
  }
  // Far from y the kernel behaves like eps^2, so the ratio plateaus at M^2.
  for (double r : ratios) {
    EXPECT_GT(r, 1.0);
    EXPECT_LT(r, 4.0 + 1e-6);
  }
  EXPECT_NEAR(ratios.back(), 4.0, 0.01);
}

TEST(ZRatio, UnsupportedForModelsWithoutDensities) {
  const AbcTarget target(std::make_shared<LinearGaussianSsm>(std::vector<double>{0.1}, 1.0, 1.0),
                         ToleranceSchedule::geometric(1.0, 2, 2));
  EXPECT_THROW(z_ratio_quadrature(target, 1), UnsupportedModelError);
}

TEST(AbcTarget, KernelStrictlyPositive) {
  const std::vector<double> y{0.0};
  const std::vector<double> u{1e6};
  EXPECT_GT(kernel_eval(y, u, 1e-3), 0.0);
}

}  // namespace
