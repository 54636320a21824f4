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

#ifndef SHAREDREP_DATASET_IO_HPP_
#define SHAREDREP_DATASET_IO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "sharedrep/model.hpp"

namespace sharedrep {

// Versioned CSV bundle layout (schema sharedrep-bundle-v1):
//   manifest.txt        key = value pairs (schema, d, k, M, sigma, gamma, ...)
//   B_star.csv          d x k
//   alphas.csv          k x M
//   partitions.csv      one n_i per line
//   gamma_diag.csv      M x d diagonal entries (diagonal profile only)
//   gamma_dense_IIII.csv  per-client d x d (dense profile only)
//   client_IIII.csv     header x_1,...,x_d,y then n_i rows
//
// Ground truth files are optional in a bundle; datasets exported from real
// deployments carry only partitions and client files.
void save_bundle(const std::filesystem::path& dir, const FederatedDataset& dataset,
                 const GroundTruth* ground_truth = nullptr,
                 const std::map<std::string, std::string>& extra_manifest = {});

FederatedDataset load_dataset(const std::filesystem::path& dir);
std::optional<GroundTruth> load_ground_truth(const std::filesystem::path& dir);
std::map<std::string, std::string> read_bundle_manifest(
    const std::filesystem::path& dir);

// Single client file with the x_1,...,x_d,y header; also the format consumed
// by the `transfer` CLI subcommand.
void save_client_csv(const std::filesystem::path& path, const ClientData& client);
ClientData load_client_csv(const std::filesystem::path& path);

}  // namespace sharedrep

#endif  // SHAREDREP_DATASET_IO_HPP_
