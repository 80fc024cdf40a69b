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

#ifndef MLABC_QUADRATURE_HPP
#define MLABC_QUADRATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mlabc/model.hpp"

namespace mlabc {

inline constexpr std::size_t kDefaultQuadratureGrid = 2048;

/**
 * Tensor-grid trapezoid quadrature for single-observation targets.
 *
 * Z(eps) = int K_eps(y, u) f(u | theta) pi(theta) d(u, theta) over the
 * model's compact box. The kernel depends on u only, so the theta sums are
 * folded once into per-node weights; the result is exactly the tensor rule.
 */
class PseudoDataQuadrature {
 public:
  PseudoDataQuadrature(const StateSpaceModel& model, std::size_t grid = kDefaultQuadratureGrid);

  [[nodiscard]] double normalizer(double eps) const;

  /// int phi(u, theta) K_eps f pi, using the same tensor rule.
  template <class Phi>
  [[nodiscard]] double moment(double eps, Phi&& phi) const;

  [[nodiscard]] std::span<const double> u_nodes() const { return u_nodes_; }
  [[nodiscard]] double y() const { return y_; }

 private:
  const TractableDensities* densities_;
  double y_;
  std::vector<double> u_nodes_;
  std::vector<double> theta_nodes_;
  std::vector<double> u_weights_;      // trapezoid weight * sum_theta f pi
  std::vector<double> theta_weights_;  // trapezoid weights in theta
};

/// Z_{l-1} / Z_l for 1 <= l <= L.
double z_ratio_quadrature(const AbcTarget& target, int level, std::size_t grid = kDefaultQuadratureGrid);

template <class Phi>
double PseudoDataQuadrature::moment(double eps, Phi&& phi) const {
  double total = 0.0;
  for (std::size_t j = 0; j < u_nodes_.size(); ++j) {
    const double u = u_nodes_[j];
    const double k = 1.0 / (1.0 + ((y_ - u) / eps) * ((y_ - u) / eps));
    double inner = 0.0;
    for (std::size_t i = 0; i < theta_nodes_.size(); ++i) {
      const double theta = theta_nodes_[i];
      inner += theta_weights_[i] *
               std::exp(densities_->log_likelihood(u, theta) + densities_->log_prior(theta)) * phi(u, theta);
    }
    const double du = (j == 0 || j + 1 == u_nodes_.size()) ? 0.5 : 1.0;
    total += du * k * inner;
  }
  const double hu = u_nodes_[1] - u_nodes_[0];
  return total * hu;
}

}  // namespace mlabc

#endif  // MLABC_QUADRATURE_HPP
