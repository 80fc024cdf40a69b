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

#include "mlabc/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this acceptance mass the truncated normal switches to inversion.
constexpr double kRejectionMassFloor = 0.05;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) {
    throw ParameterError(what);
  }
}

// Upper-tail probability of the standard normal.
double standard_normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double standard_normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

double truncated_mass(const TruncatedNormal& d) {
  const double sd = std::sqrt(d.variance);
  const double a = (d.lo - d.mean) / sd;
  const double b = (d.hi - d.mean) / sd;
  if (a > 0.0) {
    return standard_normal_sf(a) - standard_normal_sf(b);
  }
  return standard_normal_cdf(b) - standard_normal_cdf(a);
}

double sample_truncated_by_inversion(const TruncatedNormal& d, RngStream& stream) {
  const double sd = std::sqrt(d.variance);
  double a = (d.lo - d.mean) / sd;
  double b = (d.hi - d.mean) / sd;
  // Work in the lower tail, where the CDF keeps relative precision.
  const bool mirrored = a > 0.0;
  if (mirrored) {
    const double tmp = a;
    a = -b;
    b = -tmp;
  }
  const double fa = standard_normal_cdf(a);
  const double fb = standard_normal_cdf(b);
  double z = standard_normal_quantile(fa + stream.uniform() * (fb - fa));
  z = std::clamp(z, std::nextafter(a, kInf), std::nextafter(b, -kInf));
  if (mirrored) {
    z = -z;
  }
  return d.mean + sd * z;
}

double sample_truncated(const TruncatedNormal& d, RngStream& stream) {
  if (truncated_mass(d) < kRejectionMassFloor) {
    return sample_truncated_by_inversion(d, stream);
  }
  const double sd = std::sqrt(d.variance);
  for (;;) {
    const double x = d.mean + sd * stream.normal();
    if (x > d.lo && x < d.hi) {
      return x;
    }
  }
}

}  // namespace

double normal_log_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + z * z / variance);
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

void validate(const DistSpec& dist) {
  std::visit(Overloaded{
                 [](const Normal& d) {
                   require(std::isfinite(d.mean), "normal: mean must be finite");
                   require(d.variance > 0.0 && std::isfinite(d.variance), "normal: variance must be > 0");
                 },
                 [](const TruncatedNormal& d) {
                   require(std::isfinite(d.mean), "truncated_normal: mean must be finite");
                   require(d.variance > 0.0 && std::isfinite(d.variance), "truncated_normal: variance must be > 0");
                   require(d.lo < d.hi, "truncated_normal: requires lo < hi");
                 },
                 [](const InverseGamma& d) {
                   require(d.shape > 0.0 && std::isfinite(d.shape), "inverse_gamma: shape must be > 0");
                   require(d.scale > 0.0 && std::isfinite(d.scale), "inverse_gamma: scale must be > 0");
                 },
                 [](const Uniform& d) {
                   require(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi, "uniform: requires lo < hi");
                 },
             },
             dist);
}

double sample(const DistSpec& dist, RngStream& stream) {
  validate(dist);
  return std::visit(Overloaded{
                        [&](const Normal& d) { return d.mean + std::sqrt(d.variance) * stream.normal(); },
                        [&](const TruncatedNormal& d) { return sample_truncated(d, stream); },
                        [&](const InverseGamma& d) { return d.scale / stream.gamma(d.shape); },
                        [&](const Uniform& d) { return d.lo + (d.hi - d.lo) * stream.uniform(); },
                    },
                    dist);
}

double log_density(const DistSpec& dist, double x) {
  validate(dist);
  return std::visit(Overloaded{
                        [&](const Normal& d) { return normal_log_pdf(x, d.mean, d.variance); },
                        [&](const TruncatedNormal& d) {
                          if (!(x > d.lo && x < d.hi)) {
                            return -kInf;
                          }
                          return normal_log_pdf(x, d.mean, d.variance) - std::log(truncated_mass(d));
                        },
                        [&](const InverseGamma& d) {
                          if (!(x > 0.0)) {
                            return -kInf;
                          }
                          return d.shape * std::log(d.scale) - std::lgamma(d.shape) - (d.shape + 1.0) * std::log(x) -
                                 d.scale / x;
                        },
                        [&](const Uniform& d) {
                          if (x < d.lo || x > d.hi) {
                            return -kInf;
                          }
                          return -std::log(d.hi - d.lo);
                        },
                    },
                    dist);
}

double mean(const DistSpec& dist) {
  validate(dist);
  return std::visit(Overloaded{
                        [](const Normal& d) { return d.mean; },
                        [](const TruncatedNormal& d) {
                          const double sd = std::sqrt(d.variance);
                          const double a = (d.lo - d.mean) / sd;
                          const double b = (d.hi - d.mean) / sd;
                          const double pdf_a = std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
                          const double pdf_b = std::exp(-0.5 * b * b) / std::sqrt(2.0 * std::numbers::pi);
                          return d.mean + sd * (pdf_a - pdf_b) / truncated_mass(d);
                        },
                        [](const InverseGamma& d) { return d.shape > 1.0 ? d.scale / (d.shape - 1.0) : kInf; },
                        [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                    },
                    dist);
}

double sample_stable(double location, double scale, double stability, double skewness, RngStream& stream) {
  if (!(stability > 0.0 && stability <= 2.0)) {
    throw ParameterError("stable: stability must lie in (0, 2], got " + std::to_string(stability));
  }
  if (!(skewness >= -1.0 && skewness <= 1.0)) {
    throw ParameterError("stable: skewness must lie in [-1, 1], got " + std::to_string(skewness));
  }
  if (!(scale > 0.0)) {
    throw ParameterError("stable: scale must be > 0");
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * (stream.uniform() - 0.5);
  const double w = stream.exponential();

  double z = 0.0;
  if (stability == 1.0) {
    const double shifted = kHalfPi + skewness * v;
    z = (shifted * std::tan(v) - skewness * std::log(kHalfPi * w * std::cos(v) / shifted)) / kHalfPi;
    return scale * z + location;
  }
  const double tan_term = skewness * std::tan(kHalfPi * stability);
  const double b = std::atan(tan_term) / stability;
  const double s = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * stability));
  const double arg = stability * (v + b);
  z = s * std::sin(arg) / std::pow(std::cos(v), 1.0 / stability) *
      std::pow(std::cos(v - arg) / w, (1.0 - stability) / stability);
  // S1 -> S0 shift keeps the law continuous at stability 1.
  return scale * (z - tan_term) + location;
}

}  // namespace mlabc
