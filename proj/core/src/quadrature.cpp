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

#include "mlabc/quadrature.hpp"

#include <cmath>
#include <string>

#include "mlabc/errors.hpp"

namespace mlabc {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> nodes(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    nodes[i] = lo + step * static_cast<double>(i);
  }
  nodes.back() = hi;
  return nodes;
}

}  // namespace

PseudoDataQuadrature::PseudoDataQuadrature(const StateSpaceModel& model, std::size_t grid)
    : densities_(model.tractable()) {
  if (densities_ == nullptr || model.num_sites() != 1) {
    throw UnsupportedModelError("quadrature needs a single-observation model with pointwise densities");
  }
  if (grid < 3) {
    throw ParameterError("quadrature: grid must have at least 3 nodes per axis");
  }
  y_ = model.data()[0];
  const Box box = densities_->domain();
  u_nodes_ = linspace(box.u_lo, box.u_hi, grid);
  theta_nodes_ = linspace(box.theta_lo, box.theta_hi, grid);

  const double h_theta = theta_nodes_[1] - theta_nodes_[0];
  theta_weights_.assign(grid, h_theta);
  theta_weights_.front() *= 0.5;
  theta_weights_.back() *= 0.5;

  std::vector<double> log_prior(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    log_prior[i] = densities_->log_prior(theta_nodes_[i]);
  }

  const double h_u = u_nodes_[1] - u_nodes_[0];
  u_weights_.assign(grid, 0.0);
  for (std::size_t j = 0; j < grid; ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
      inner += theta_weights_[i] * std::exp(densities_->log_likelihood(u_nodes_[j], theta_nodes_[i]) + log_prior[i]);
    }
    const double end_factor = (j == 0 || j + 1 == grid) ? 0.5 : 1.0;
    u_weights_[j] = end_factor * h_u * inner;
  }
}

double PseudoDataQuadrature::normalizer(double eps) const {
  if (!(eps > 0.0)) {
    throw ParameterError("quadrature: eps must be > 0");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < u_nodes_.size(); ++j) {
    const double z = (y_ - u_nodes_[j]) / eps;
    total += u_weights_[j] / (1.0 + z * z);
  }
  return total;
}

double z_ratio_quadrature(const AbcTarget& target, int level, std::size_t grid) {
  const auto& schedule = target.schedule();
  if (level < 1 || level > schedule.top_level()) {
    throw IndexError("z ratio: level " + std::to_string(level) + " outside [1, " +
                     std::to_string(schedule.top_level()) + "]");
  }
  const PseudoDataQuadrature quad(target.model(), grid);
  return quad.normalizer(schedule.eps(level - 1)) / quad.normalizer(schedule.eps(level));
}

}  // namespace mlabc
