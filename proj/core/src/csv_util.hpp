//
// Copyright 2026 The shared-rep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SHAREDREP_SRC_CSV_UTIL_HPP_
#define SHAREDREP_SRC_CSV_UTIL_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sharedrep/error.hpp"

namespace sharedrep::csv {

// Shortest round-trip representation; deterministic given the value.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos == 0) throw ConfigError("csv: cannot parse number: " + s);
  return v;
}

inline void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

inline void write_matrix_file(const std::filesystem::path& path,
                              const Eigen::MatrixXd& m) {
  std::ofstream os(path);
  if (!os) throw ConfigError("csv: cannot open for writing: " + path.string());
  write_matrix(os, m);
}

inline Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("csv: cannot open: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    for (const auto& f : split(line, ',')) row.push_back(parse_double(f));
    if (!rows.empty() && row.size() != rows[0].size())
      throw ConfigError("csv: ragged rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace sharedrep::csv

#endif  // SHAREDREP_SRC_CSV_UTIL_HPP_
