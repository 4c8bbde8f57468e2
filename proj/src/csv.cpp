// Copyright 2026 The qsky Authors
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

#include "qsky/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qsky {

namespace {

constexpr std::size_t kColumns = 11;

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
  out << kResultCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << r.experiment << ',' << r.channel << ',' << optional_cell(r.sweep_value) << ',' << r.l1
        << ',' << r.l2 << ',' << format_double(r.n_initial) << ',' << format_double(r.n_final)
        << ',' << format_double(r.valid_fraction) << ',' << (r.singular ? 1 : 0) << ','
        << optional_cell(r.boundary_phi) << ',' << format_double(r.wall_time) << '\n';
  }
}

void write_results_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_results_csv(out, result);
}

ExperimentResult read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultCsvHeader) {
    throw std::runtime_error("line 1: missing or unexpected CSV header");
  }
  ExperimentResult result;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != kColumns) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(kColumns) + " columns, got " +
                               std::to_string(c.size()));
    }
    ResultRow r;
    r.experiment = c[0];
    r.channel = c[1];
    if (!c[2].empty()) r.sweep_value = parse_double(c[2], lineno);
    r.l1 = parse_int(c[3], lineno);
    r.l2 = parse_int(c[4], lineno);
    r.n_initial = parse_double(c[5], lineno);
    r.n_final = parse_double(c[6], lineno);
    r.valid_fraction = parse_double(c[7], lineno);
    r.singular = parse_int(c[8], lineno) != 0;
    if (!c[9].empty()) r.boundary_phi = parse_double(c[9], lineno);
    r.wall_time = parse_double(c[10], lineno);
    result.rows.push_back(std::move(r));
  }
  return result;
}

ExperimentResult read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_results_csv(in);
}

}  // namespace qsky
