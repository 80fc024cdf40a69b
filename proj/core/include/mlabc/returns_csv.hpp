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

#ifndef MLABC_RETURNS_CSV_HPP
#define MLABC_RETURNS_CSV_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mlabc {

inline constexpr double kPercentReturns = 100.0;

/// r_i = scale * (log p_i - log p_{i-1}), minus the sample mean of r.
std::vector<double> mean_corrected_log_returns(std::span<const double> prices, double scale = kPercentReturns);

/**
 * Reads a price column from a headed, comma-separated file and returns
 * mean-corrected log returns (percent by default).
 */
std::vector<double> load_returns_csv(const std::filesystem::path& path, const std::string& column_name = "Close",
                                     double scale = kPercentReturns);

}  // namespace mlabc

#endif  // MLABC_RETURNS_CSV_HPP
