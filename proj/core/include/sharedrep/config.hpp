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

#ifndef SHAREDREP_CONFIG_HPP_
#define SHAREDREP_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sharedrep/model.hpp"

namespace sharedrep {

struct EstimatorSpec {
  enum class Kind { kReplica, kMultigroup, kMom, kPairwise };
  // kPairwise weightings: uniform w_i = 1/M, or w_i proportional to
  // sqrt(n_i (n_i - 1)) as induced by the g = n multigroup extreme.
  enum class PairwiseWeights { kUniform, kSqrtPairs };
  Kind kind = Kind::kReplica;
  int groups = 2;  // kMultigroup only
  PairwiseWeights weights = PairwiseWeights::kUniform;

  std::string name() const;
  // Accepts "replica", "multigroup(g)", "mom", "pairwise",
  // "pairwise(uniform)", "pairwise(sqrt)".
  static EstimatorSpec parse(const std::string& text);
};

struct TransferBlock {
  int n_new = 0;
  // When set, the sweep's transfer fit runs the private mechanism.
  std::optional<double> epsilon;
  double delta = 1e-5;
  double clip_bound = 1.0;
};

enum class LinkKind { kLinear, kLogistic, kRelu };

struct ExperimentConfig {
  int d = 40;
  int k = 5;
  int M = 300;
  PartitionScheme partition = PartitionScheme::equal(20);
  GammaProfile gamma = GammaProfile::identity();
  AlphaScheme alpha = AlphaScheme::gaussian();
  double sigma = 1.0;
  LinkKind link = LinkKind::kLinear;
  std::vector<EstimatorSpec> estimators;
  int repetitions = 10;
  std::uint64_t master_seed = 42;
  std::optional<TransferBlock> transfer;

  // Canonical serialization of the statistical identity (d, k, M, partition,
  // gamma, alpha, sigma, link).  The master seed, repetition count, and
  // estimator list are deliberately excluded: the ground truth is a function
  // of the statistical configuration only, so re-running with more
  // repetitions or more estimators keeps the same parameters.
  std::string canonical_string() const;
  std::uint64_t config_hash() const;

  void validate() const;
};

// Ready-made presets: `desk` (d=40, n=20, M=300) runs in seconds, `paper`
// (d=120, n=60, M=1000) is the full-scale preset and runs in minutes.
ExperimentConfig desk_profile();
ExperimentConfig paper_profile();

// Key-value config format: `key = value` lines, `#` comments.  d, k, and M
// accept comma lists and expand to a cartesian grid (d outer, then k, then
// M).  Unknown keys are rejected.
std::vector<ExperimentConfig> parse_config_text(const std::string& text,
                                                const ExperimentConfig& base);
std::vector<ExperimentConfig> parse_config_file(const std::filesystem::path& path,
                                                const ExperimentConfig& base);

std::uint64_t fnv1a64(const std::string& s);
std::string hash_hex(std::uint64_t h);

}  // namespace sharedrep

#endif  // SHAREDREP_CONFIG_HPP_
