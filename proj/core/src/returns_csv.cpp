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

#include "mlabc/returns_csv.hpp"

#include <cmath>
#include <numeric>

#include "mlabc/csv.hpp"
#include "mlabc/errors.hpp"

namespace mlabc {

std::vector<double> mean_corrected_log_returns(std::span<const double> prices, double scale) {
  if (prices.size() < 2) {
    throw InputError("returns: need at least 2 prices, got " + std::to_string(prices.size()));
  }
  std::vector<double> returns(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    if (!(prices[i] > 0.0) || !(prices[i - 1] > 0.0)) {
      throw InputError("returns: prices must be positive (row " + std::to_string(i + 1) + ")");
    }
    returns[i - 1] = scale * (std::log(prices[i]) - std::log(prices[i - 1]));
  }
  const double centre = std::accumulate(returns.begin(), returns.end(), 0.0) / static_cast<double>(returns.size());
  for (double& r : returns) {
    r -= centre;
  }
  return returns;
}

std::vector<double> load_returns_csv(const std::filesystem::path& path, const std::string& column_name,
                                     double scale) {
  const CsvTable table = read_csv_file(path);
  return mean_corrected_log_returns(table.numeric_column(column_name), scale);
}

}  // namespace mlabc
