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

#include "sharedrep/estimate_io.hpp"

#include <fstream>

#include <json.hpp>

#include "csv_util.hpp"

namespace sharedrep {

void save_subspace_estimate(const std::filesystem::path& path,
                            const SubspaceEstimate& estimate,
                            const EstimateMetadata& meta) {
  std::ofstream os(path);
  if (!os)
    throw ConfigError("save_subspace_estimate: cannot open " + path.string());
  nlohmann::json j;
  j["estimator"] = meta.estimator;
  j["seed"] = meta.seed;
  j["config_hash"] = meta.config_hash;
  j["d"] = estimate.basis.rows();
  j["k"] = estimate.basis.cols();
  j["gap_degenerate"] = estimate.gap_degenerate;
  os << "# " << j.dump() << '\n';
  csv::write_matrix(os, estimate.basis);
}

std::pair<SubspaceEstimate, EstimateMetadata> load_subspace_estimate(
    const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is)
    throw ConfigError("load_subspace_estimate: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
    throw ConfigError("load_subspace_estimate: missing metadata line in " +
                      path.string());
  nlohmann::json j = nlohmann::json::parse(line.substr(1), nullptr, false);
  if (j.is_discarded())
    throw ConfigError("load_subspace_estimate: invalid metadata JSON in " +
                      path.string());

  EstimateMetadata meta;
  meta.estimator = j.value("estimator", "");
  meta.seed = j.value("seed", std::uint64_t{0});
  meta.config_hash = j.value("config_hash", "");

  SubspaceEstimate est;
  est.source = meta.estimator;
  est.gap_degenerate = j.value("gap_degenerate", false);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : csv::split(line, ',')) row.push_back(csv::parse_double(f));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw ConfigError("load_subspace_estimate: no basis rows in " + path.string());
  est.basis.resize(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ConfigError("load_subspace_estimate: ragged basis in " + path.string());
    for (std::size_t c = 0; c < rows[i].size(); ++c) est.basis(i, c) = rows[i][c];
  }
  return {est, meta};
}

}  // namespace sharedrep
