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

#include "sharedrep/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "csv_util.hpp"

namespace sharedrep {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "sharedrep-bundle-v1";

std::string client_file_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "client_%04d.csv", i);
  return buf;
}

std::string gamma_file_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "gamma_dense_%04d.csv", i);
  return buf;
}

std::map<std::string, std::string> read_manifest(const fs::path& dir) {
  std::ifstream is(dir / "manifest.txt");
  if (!is)
    throw ConfigError("load: missing manifest.txt in " + dir.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

void save_client_csv(const fs::path& path, const ClientData& client) {
  std::ofstream os(path);
  if (!os) throw ConfigError("save_client_csv: cannot open " + path.string());
  const int d = static_cast<int>(client.X.cols());
  for (int j = 0; j < d; ++j) os << "x_" << (j + 1) << ',';
  os << "y\n";
  for (Eigen::Index r = 0; r < client.X.rows(); ++r) {
    for (int j = 0; j < d; ++j) os << csv::format_double(client.X(r, j)) << ',';
    os << csv::format_double(client.y(r)) << '\n';
  }
}

ClientData load_client_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("load_client_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line))
    throw ConfigError("load_client_csv: empty file " + path.string());
  const auto header = csv::split(line, ',');
  if (header.size() < 2 || header.back() != "y")
    throw ConfigError("load_client_csv: expected x_1,...,x_d,y header in " +
                      path.string());
  const int d = static_cast<int>(header.size()) - 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line, ',');
    if (static_cast<int>(fields.size()) != d + 1)
      throw ConfigError("load_client_csv: ragged row in " + path.string());
    std::vector<double> row;
    row.reserve(d + 1);
    for (const auto& f : fields) row.push_back(csv::parse_double(f));
    rows.push_back(std::move(row));
  }
  ClientData c;
  c.X.resize(rows.size(), d);
  c.y.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < d; ++j) c.X(r, j) = rows[r][j];
    c.y(r) = rows[r][d];
  }
  return c;
}

void save_bundle(const fs::path& dir, const FederatedDataset& dataset,
                 const GroundTruth* ground_truth,
                 const std::map<std::string, std::string>& extra_manifest) {
  dataset.validate();
  fs::create_directories(dir);

  std::ofstream manifest(dir / "manifest.txt");
  if (!manifest) throw ConfigError("save_bundle: cannot write manifest");
  manifest << "schema = " << kSchema << '\n';
  manifest << "d = " << dataset.dim() << '\n';
  manifest << "M = " << dataset.client_count() << '\n';
  for (const auto& [key, value] : extra_manifest)
    manifest << key << " = " << value << '\n';
  if (ground_truth) {
    manifest << "k = " << ground_truth->k << '\n';
    manifest << "sigma = " << csv::format_double(ground_truth->noise_sigma) << '\n';
    const char* kind = "identity";
    if (!ground_truth->gammas.empty()) {
      switch (ground_truth->gammas[0].kind()) {
        case GammaKind::kIdentity: kind = "identity"; break;
        case GammaKind::kDiagonal: kind = "diagonal"; break;
        case GammaKind::kDenseSpd: kind = "dense"; break;
      }
    }
    manifest << "gamma = " << kind << '\n';
  }

  {
    std::ofstream parts(dir / "partitions.csv");
    for (int n : dataset.partitions) parts << n << '\n';
  }

  if (ground_truth) {
    csv::write_matrix_file(dir / "B_star.csv", ground_truth->B_star);
    csv::write_matrix_file(dir / "alphas.csv", ground_truth->alphas);
    if (!ground_truth->gammas.empty() &&
        ground_truth->gammas[0].kind() == GammaKind::kDiagonal) {
      Eigen::MatrixXd diag(ground_truth->M, ground_truth->d);
      for (int i = 0; i < ground_truth->M; ++i)
        diag.row(i) = ground_truth->gammas[i].matrix().diagonal().transpose();
      csv::write_matrix_file(dir / "gamma_diag.csv", diag);
    } else if (!ground_truth->gammas.empty() &&
               ground_truth->gammas[0].kind() == GammaKind::kDenseSpd) {
      for (int i = 0; i < ground_truth->M; ++i)
        csv::write_matrix_file(dir / gamma_file_name(i),
                               ground_truth->gammas[i].matrix());
    }
  }

  for (int i = 0; i < dataset.client_count(); ++i)
    save_client_csv(dir / client_file_name(i), dataset.clients[i]);
}

FederatedDataset load_dataset(const fs::path& dir) {
  const auto kv = read_manifest(dir);
  const auto schema = kv.find("schema");
  if (schema == kv.end() || schema->second != kSchema)
    throw ConfigError("load_dataset: unsupported bundle schema in " + dir.string());

  FederatedDataset ds;
  {
    std::ifstream parts(dir / "partitions.csv");
    if (!parts) throw ConfigError("load_dataset: missing partitions.csv");
    std::string line;
    while (std::getline(parts, line)) {
      if (line.empty()) continue;
      ds.partitions.push_back(std::stoi(line));
    }
  }
  ds.N = 0;
  for (std::size_t i = 0; i < ds.partitions.size(); ++i) {
    ds.clients.push_back(load_client_csv(dir / client_file_name(static_cast<int>(i))));
    ds.N += ds.partitions[i];
  }
  ds.validate();
  return ds;
}

std::map<std::string, std::string> read_bundle_manifest(const fs::path& dir) {
  return read_manifest(dir);
}

std::optional<GroundTruth> load_ground_truth(const fs::path& dir) {
  if (!fs::exists(dir / "B_star.csv")) return std::nullopt;
  const auto kv = read_manifest(dir);

  GroundTruth gt;
  gt.B_star = csv::read_matrix_file(dir / "B_star.csv");
  gt.alphas = csv::read_matrix_file(dir / "alphas.csv");
  gt.d = static_cast<int>(gt.B_star.rows());
  gt.k = static_cast<int>(gt.B_star.cols());
  gt.M = static_cast<int>(gt.alphas.cols());
  if (auto it = kv.find("sigma"); it != kv.end())
    gt.noise_sigma = csv::parse_double(it->second);

  std::string kind = "identity";
  if (auto it = kv.find("gamma"); it != kv.end()) kind = it->second;
  gt.gammas.reserve(gt.M);
  if (kind == "identity") {
    for (int i = 0; i < gt.M; ++i) gt.gammas.push_back(Covariance::identity(gt.d));
  } else if (kind == "diagonal") {
    const Eigen::MatrixXd diag = csv::read_matrix_file(dir / "gamma_diag.csv");
    if (diag.rows() != gt.M || diag.cols() != gt.d)
      throw ConfigError("load_ground_truth: gamma_diag.csv has wrong shape");
    for (int i = 0; i < gt.M; ++i)
      gt.gammas.push_back(Covariance::diagonal(diag.row(i).transpose()));
  } else if (kind == "dense") {
    for (int i = 0; i < gt.M; ++i)
      gt.gammas.push_back(
          Covariance::dense(csv::read_matrix_file(dir / gamma_file_name(i))));
  } else {
    throw ConfigError("load_ground_truth: unknown gamma kind: " + kind);
  }
  return gt;
}

}  // namespace sharedrep
