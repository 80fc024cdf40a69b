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

#ifndef MLABC_CSV_HPP
#define MLABC_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mlabc {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Comma-separated file: optional '#' comment lines, one header row, data rows.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index; throws InputError naming the column when absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
  [[nodiscard]] std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

/// Parses a whole cell as a double; throws InputError otherwise.
double parse_double(std::string_view text);

}  // namespace mlabc

#endif  // MLABC_CSV_HPP
