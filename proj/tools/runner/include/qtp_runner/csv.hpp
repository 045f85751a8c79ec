// Copyright 2026 The qtp Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qtp::runner {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  void add(std::string name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
};

// Scientific notation with `precision` significant digits; -0 prints as 0.
std::string format_number(double x, int precision);

// Comma separated, LF line endings, header row first.
std::string to_csv(const Table& table, int precision);
void write_csv(const std::filesystem::path& path, const Table& table, int precision);
Table read_csv(const std::filesystem::path& path);
Table parse_csv(const std::string& text);

// {"columns": [...], "data": {"name": [...], ...}} with values rounded to precision.
std::string to_json(const Table& table, int precision);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qtp::runner
