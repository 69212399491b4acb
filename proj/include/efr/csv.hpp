/*
 * efr: elastic functional regression for scalar-on-function problems
 *
 * Copyright 2026 The efr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "efr/errors.hpp"
#include "efr/grid.hpp"
#include "efr/warping.hpp"

namespace efr {

/// Doubles are written with 17 significant digits so they round-trip
/// exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline bool parse_double(const std::string& s, double& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtod(p, &end);
  if (end == p) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

inline std::ifstream open_for_read(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return f;
}

}  // namespace detail

/// One row per value vector; optional header t_0,...,t_{n-1}.
inline void write_matrix_csv(const std::string& path,
                             const std::vector<std::vector<double>>& rows, int n_cols,
                             bool header = true) {
  std::ofstream f = detail::open_for_write(path);
  if (header) {
    for (int k = 0; k < n_cols; ++k) f << (k ? "," : "") << "t_" << k;
    f << "\n";
  }
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << format_double(row[k]);
    f << "\n";
  }
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline void write_predictors_csv(const std::string& path,
                                 const std::vector<DiscretizedFunction>& fs, Grid grid) {
  std::vector<std::vector<double>> rows;
  rows.reserve(fs.size());
  for (const auto& f : fs) rows.push_back(f.values);
  write_matrix_csv(path, rows, grid.n_points);
}

/// Rectangular numeric matrix; a non-numeric first row is treated as a
/// header and skipped. Ragged or malformed rows raise ParseError with the
/// offending line number.
inline std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
  std::ifstream f = detail::open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  std::size_t width = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const auto& s : fields) {
      double v;
      if (!detail::parse_double(s, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header row
      throw ParseError(path, lineno, "non-numeric field");
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ParseError(path, lineno,
                       "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Predictors: one function per row, columns are grid values.
inline std::vector<DiscretizedFunction> read_predictors_csv(const std::string& path) {
  const auto rows = read_matrix_csv(path);
  std::vector<DiscretizedFunction> fs;
  fs.reserve(rows.size());
  if (rows.empty()) return fs;
  const Grid grid = Grid::of_size(static_cast<int>(rows.front().size()));
  for (auto& row : rows) fs.push_back(DiscretizedFunction::from_values(grid, row));
  return fs;
}

/// Single-column responses, aligned to the predictor rows by index.
inline void write_responses_csv(const std::string& path, const std::vector<double>& y) {
  std::ofstream f = detail::open_for_write(path);
  for (double v : y) f << format_double(v) << "\n";
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline std::vector<double> read_responses_csv(const std::string& path) {
  const auto rows = read_matrix_csv(path);
  std::vector<double> y;
  y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1)
      throw ParseError(path, static_cast<long>(i + 1), "expected a single response column");
    y.push_back(rows[i][0]);
  }
  return y;
}

}  // namespace efr
