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

#ifndef SHAREDREP_SWEEP_HPP_
#define SHAREDREP_SWEEP_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sharedrep/config.hpp"
#include "sharedrep/model.hpp"

namespace sharedrep {

struct SweepRow {
  std::uint64_t config_hash = 0;
  std::string estimator;
  std::uint64_t seed = 0;  // per-repetition data seed
  // Absent on estimator failure (see diagnostic) and on baseline rows that
  // do not produce a subspace.
  std::optional<double> sin_theta_error;
  std::optional<double> transfer_error;
  double lambda1 = 0.0;
  double lambdak = 0.0;
  double wallclock_ms = 0.0;
  // Non-empty when the estimator failed; the run continues.
  std::string diagnostic;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Ground truth and partitions are a function of the config hash alone; the
// dataset is regenerated per repetition from (master_seed, config, index).
// Every requested estimator sees the same dataset.  When a transfer block is
// present, each estimator row gains a transfer_error against a common new
// client and one extra "independent" baseline row is emitted per repetition.
std::vector<SweepRow> run_trial(const ExperimentConfig& config,
                                int repetition_index);

// Cartesian sweep over the expanded grid.  Trials run on `parallelism`
// threads; rows come back in deterministic (grid x repetition x estimator)
// order regardless of thread count.  Duplicate config hashes are rejected.
SweepResult sweep(const std::vector<ExperimentConfig>& grid, int parallelism);

// Versioned results CSV.  wallclock_ms is written as 0 unless
// include_timing is set, keeping default output byte-deterministic across
// machines and parallelism levels.
void write_results_csv(const std::filesystem::path& path, const SweepResult& result,
                       bool include_timing = false);
SweepResult read_results_csv(const std::filesystem::path& path);

// Sidecar mapping config_hash -> configuration, consumed by `plot`.
void write_configs_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentConfig>& grid);

struct ConfigKey {
  std::uint64_t hash = 0;
  int d = 0;
  int k = 0;
  int M = 0;
};

std::vector<ConfigKey> config_keys(const std::vector<ExperimentConfig>& grid);
std::vector<ConfigKey> read_configs_csv(const std::filesystem::path& path);

}  // namespace sharedrep

#endif  // SHAREDREP_SWEEP_HPP_
