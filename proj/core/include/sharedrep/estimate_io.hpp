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

#ifndef SHAREDREP_ESTIMATE_IO_HPP_
#define SHAREDREP_ESTIMATE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

#include "sharedrep/subspace.hpp"

namespace sharedrep {

struct EstimateMetadata {
  std::string estimator;
  std::uint64_t seed = 0;
  std::string config_hash;
};

// File format: a `# {json}` metadata line followed by the d x k basis in CSV.
void save_subspace_estimate(const std::filesystem::path& path,
                            const SubspaceEstimate& estimate,
                            const EstimateMetadata& meta);

std::pair<SubspaceEstimate, EstimateMetadata> load_subspace_estimate(
    const std::filesystem::path& path);

}  // namespace sharedrep

#endif  // SHAREDREP_ESTIMATE_IO_HPP_
