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

#ifndef MLABC_DISTRIBUTIONS_HPP
#define MLABC_DISTRIBUTIONS_HPP

#include <variant>

#include "mlabc/rng.hpp"

/**
 * \file
 * \brief Primitive distributions used by the benchmark models.
 *
 * Parametrizations:
 *  - Normal{mean, variance}
 *  - TruncatedNormal{mean, variance, lo, hi}: the normal restricted to (lo, hi)
 *  - InverseGamma{shape, scale}: density b^a / Gamma(a) x^{-a-1} exp(-b/x), so the
 *    mean is scale / (shape - 1); InverseGamma{2, 0.01} has mean 0.01 and
 *    infinite variance.
 *  - Uniform{lo, hi}
 *
 * Alpha-stable draws use the Chambers-Mallows-Stuck transform and are returned
 * in Nolan's S0 parametrization S(stability, skewness, scale, location; 0),
 * which is continuous in the stability index at 1. The standardized law has
 * characteristic function
 *
 *   exp(-|t|^a [1 + i b tan(pi a / 2) sign(t) (|t|^{1-a} - 1)])    (a != 1)
 *
 * A model written as St(s0, s1, s2, s3) with location s0, scale s1, stability
 * s2 and skewness s3 maps to sample_stable(s0, s1, s2, s3, stream). At
 * stability 2 the law is Gaussian with variance 2 scale^2.
 */

namespace mlabc {

struct Normal {
  double mean;
  double variance;
};

struct TruncatedNormal {
  double mean;
  double variance;
  double lo;
  double hi;
};

struct InverseGamma {
  double shape;
  double scale;
};

struct Uniform {
  double lo;
  double hi;
};

using DistSpec = std::variant<Normal, TruncatedNormal, InverseGamma, Uniform>;

/// Throws ParameterError if the parameters are outside their domain.
void validate(const DistSpec& dist);

double sample(const DistSpec& dist, RngStream& stream);

/// Natural-log density; -infinity outside the support.
double log_density(const DistSpec& dist, double x);

/// Mean of the distribution (infinite for InverseGamma with shape <= 1).
double mean(const DistSpec& dist);

double sample_stable(double location, double scale, double stability, double skewness, RngStream& stream);

/// Standard normal density, log density and CDF helpers shared by the models.
double normal_log_pdf(double x, double mean, double variance);
double standard_normal_cdf(double z);

}  // namespace mlabc

#endif  // MLABC_DISTRIBUTIONS_HPP
