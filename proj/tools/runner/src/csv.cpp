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

#include "qtp_runner/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qtp/error.hpp"

namespace qtp::runner {

void Table::add(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != rows()) {
    throw Error(ErrorKind::GridMismatch, "column " + name + " has " + std::to_string(values.size()) + " rows");
  }
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  throw Error(ErrorKind::InvalidArgument, "no column named " + name);
}

std::string format_number(double x, int precision) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", precision - 1, x);
  return buf;
}

std::string to_csv(const Table& table, int precision) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ',';
      out += format_number(table.columns[c][r], precision);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const Table& table, int precision) {
  write_text(path, to_csv(table, precision));
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ConfigParse, "empty CSV");
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) t.header.push_back(cell);
  }
  t.columns.assign(t.header.size(), {});
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(r, cell, ',')) {
      if (c >= t.columns.size()) throw Error(ErrorKind::ConfigParse, "too many fields on line " + std::to_string(row));
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw Error(ErrorKind::ConfigParse, "bad number '" + cell + "'");
      t.columns[c++].push_back(v);
    }
    if (c != t.columns.size()) throw Error(ErrorKind::ConfigParse, "too few fields on line " + std::to_string(row));
  }
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string to_json(const Table& table, int precision) {
  nlohmann::ordered_json j;
  j["columns"] = table.header;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    std::vector<double> v(table.columns[c].size());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = std::strtod(format_number(table.columns[c][r], precision).c_str(), nullptr);
    data[table.header[c]] = v;
  }
  j["data"] = std::move(data);
  return j.dump() + "\n";
}

}  // namespace qtp::runner
