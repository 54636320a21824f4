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

#include "sharedrep/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "csv_util.hpp"
#include "sharedrep/diversity.hpp"
#include "sharedrep/error.hpp"
#include "sharedrep/estimators.hpp"
#include "sharedrep/random.hpp"
#include "sharedrep/subspace.hpp"
#include "sharedrep/transfer.hpp"

namespace sharedrep {

namespace {

constexpr const char* kResultsSchema = "# sharedrep-sweep-v1";
constexpr const char* kConfigsSchema = "# sharedrep-configs-v1";

// Stream tags for seed derivation.
constexpr std::uint64_t kDataTag = 0x74726961;       // per-repetition dataset
constexpr std::uint64_t kNewClientTag = 0x6e657763;  // transfer target client
constexpr std::uint64_t kPrivacyTag = 0x64707376;    // privacy noise

SubspaceEstimate run_estimator(const EstimatorSpec& spec,
                               const FederatedDataset& dataset, int k) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::kReplica:
      return estimator_replica(dataset, k);
    case EstimatorSpec::Kind::kMultigroup: {
      // Per-client group counts: clients smaller than the requested g use
      // g_i = min(g, n_i), so multigroup(6) runs on partitions that include
      // tiny clients.
      std::vector<int> groups(dataset.partitions.size());
      for (std::size_t i = 0; i < groups.size(); ++i)
        groups[i] = std::min(spec.groups, dataset.partitions[i]);
      return estimator_multigroup(dataset, k, groups);
    }
    case EstimatorSpec::Kind::kMom:
      return estimator_mom(dataset, k);
    case EstimatorSpec::Kind::kPairwise: {
      if (spec.weights == EstimatorSpec::PairwiseWeights::kUniform)
        return estimator_pairwise(dataset, k);
      Eigen::VectorXd w(dataset.client_count());
      for (int i = 0; i < dataset.client_count(); ++i)
        w(i) = std::sqrt(static_cast<double>(dataset.partitions[i]) *
                         (dataset.partitions[i] - 1));
      SubspaceEstimate est = estimator_pairwise(dataset, k, w / w.sum());
      est.source = spec.name();
      return est;
    }
  }
  throw ConfigError("run_estimator: bad kind");
}

struct NewClient {
  Eigen::MatrixXd X;        // n_new x d, N(0, I)
  Eigen::VectorXd y;        // responses under the config's B*
  Eigen::VectorXd theta;    // B* alpha_new
};

// The new client's alpha and raw draws depend only on (master_seed,
// repetition), so the same client is reused across a grid (for example an
// M sweep); responses are completed with the config's B*.
NewClient make_new_client(const ExperimentConfig& config, int repetition,
                          const Eigen::MatrixXd& B_star) {
  const TransferBlock& block = *config.transfer;
  RandomStream rng(derive_seed(config.master_seed, kNewClientTag,
                               static_cast<std::uint64_t>(repetition)));
  Eigen::VectorXd alpha(config.k);
  const double sd = 1.0 / std::sqrt(static_cast<double>(config.k));
  do {
    for (int r = 0; r < config.k; ++r) alpha(r) = sd * rng.normal();
  } while (alpha.norm() > 4.0);

  NewClient client;
  client.theta = B_star * alpha;
  client.X = rng.normal_matrix(block.n_new, config.d);
  client.y = client.X * client.theta;
  for (int j = 0; j < block.n_new; ++j)
    client.y(j) += config.sigma * rng.normal();
  return client;
}

}  // namespace

std::vector<SweepRow> run_trial(const ExperimentConfig& config,
                                int repetition_index) {
  config.validate();
  const std::uint64_t hash = config.config_hash();

  const GroundTruth gt = [&] {
    GroundTruth g = generate_ground_truth(config.d, config.k, config.M,
                                          config.gamma, config.alpha, hash);
    g.noise_sigma = config.sigma;
    return g;
  }();
  const std::vector<int> partitions =
      sample_partitions(config.partition, config.M, hash);
  const DiversitySpectrum div = spectrum(diversity_matrix(gt.alphas, partitions));

  const std::uint64_t data_seed =
      derive_seed(config.master_seed, derive_seed(hash, kDataTag),
                  static_cast<std::uint64_t>(repetition_index));
  FederatedDataset dataset;
  switch (config.link) {
    case LinkKind::kLinear:
      dataset = sample_dataset(gt, partitions, data_seed);
      break;
    case LinkKind::kLogistic:
      dataset = sample_nonlinear_dataset(gt, LinkSpec::logistic(), partitions,
                                         data_seed);
      break;
    case LinkKind::kRelu:
      dataset = sample_nonlinear_dataset(gt, LinkSpec::relu_network(), partitions,
                                         data_seed);
      break;
  }

  std::optional<NewClient> new_client;
  if (config.transfer)
    new_client = make_new_client(config, repetition_index, gt.B_star);

  std::vector<SweepRow> rows;
  rows.reserve(config.estimators.size() + (config.transfer ? 1 : 0));
  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    const EstimatorSpec& spec = config.estimators[e];
    SweepRow row;
    row.config_hash = hash;
    row.estimator = spec.name();
    row.seed = data_seed;
    row.lambda1 = div.lambda1;
    row.lambdak = div.lambdak;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const SubspaceEstimate est = run_estimator(spec, dataset, config.k);
      row.sin_theta_error = principal_angle_distance(est.basis, gt.B_star);
      if (new_client) {
        TransferEstimate fit;
        if (config.transfer->epsilon) {
          fit = private_fit_new_client(
              est, new_client->X, new_client->y, *config.transfer->epsilon,
              config.transfer->delta, config.transfer->clip_bound,
              derive_seed(data_seed, kPrivacyTag, e));
        } else {
          fit = fit_new_client(est, new_client->X, new_client->y);
        }
        row.transfer_error = (fit.theta_hat - new_client->theta).norm();
      }
    } catch (const Error& err) {
      row.diagnostic = err.what();
    }
    row.wallclock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t0)
            .count();
    rows.push_back(std::move(row));
  }

  if (new_client) {
    SweepRow row;
    row.config_hash = hash;
    row.estimator = "independent";
    row.seed = data_seed;
    row.lambda1 = div.lambda1;
    row.lambdak = div.lambdak;
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::VectorXd theta_hat =
        independent_baseline(new_client->X, new_client->y);
    row.transfer_error = (theta_hat - new_client->theta).norm();
    row.wallclock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t0)
            .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult sweep(const std::vector<ExperimentConfig>& grid, int parallelism) {
  if (grid.empty()) throw ConfigError("sweep: empty config grid");
  if (parallelism < 1) throw ConfigError("sweep: parallelism must be >= 1");
  {
    std::set<std::uint64_t> seen;
    for (const auto& c : grid)
      if (!seen.insert(c.config_hash()).second)
        throw ConfigError("sweep: duplicate config hash " +
                          hash_hex(c.config_hash()));
  }

  // Work units are (config, repetition) pairs; each lands in its own slot so
  // assembly order is independent of scheduling.
  struct Unit {
    int config_index;
    int repetition;
  };
  std::vector<Unit> units;
  for (std::size_t c = 0; c < grid.size(); ++c)
    for (int r = 0; r < grid[c].repetitions; ++r)
      units.push_back({static_cast<int>(c), r});

  std::vector<std::vector<SweepRow>> slots(units.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      try {
        slots[u] = run_trial(grid[units[u].config_index], units[u].repetition);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::min<int>(parallelism, static_cast<int>(units.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepResult result;
  for (auto& slot : slots)
    for (auto& row : slot) result.rows.push_back(std::move(row));
  return result;
}

void write_results_csv(const std::filesystem::path& path,
                       const SweepResult& result, bool include_timing) {
  std::ofstream os(path);
  if (!os) throw ConfigError("write_results_csv: cannot open " + path.string());
  os << kResultsSchema << '\n';
  os << "config_hash,estimator,seed,sin_theta_error,transfer_error,lambda1,"
        "lambdak,wallclock_ms\n";
  for (const auto& row : result.rows) {
    os << hash_hex(row.config_hash) << ',' << row.estimator << ',' << row.seed
       << ',';
    if (row.sin_theta_error) os << csv::format_double(*row.sin_theta_error);
    os << ',';
    if (row.transfer_error) os << csv::format_double(*row.transfer_error);
    os << ',' << csv::format_double(row.lambda1) << ','
       << csv::format_double(row.lambdak) << ','
       << csv::format_double(include_timing ? row.wallclock_ms : 0.0) << '\n';
  }
}

SweepResult read_results_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("read_results_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kResultsSchema)
    throw ConfigError("read_results_csv: unsupported schema in " + path.string());
  std::getline(is, line);  // header
  SweepResult result;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line, ',');
    if (f.size() != 8)
      throw ConfigError("read_results_csv: malformed row in " + path.string());
    SweepRow row;
    row.config_hash = std::stoull(f[0], nullptr, 16);
    row.estimator = f[1];
    row.seed = std::stoull(f[2]);
    if (!f[3].empty()) row.sin_theta_error = csv::parse_double(f[3]);
    if (!f[4].empty()) row.transfer_error = csv::parse_double(f[4]);
    row.lambda1 = csv::parse_double(f[5]);
    row.lambdak = csv::parse_double(f[6]);
    row.wallclock_ms = csv::parse_double(f[7]);
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_configs_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentConfig>& grid) {
  std::ofstream os(path);
  if (!os) throw ConfigError("write_configs_csv: cannot open " + path.string());
  os << kConfigsSchema << '\n';
  os << "config_hash,d,k,M,canonical\n";
  for (const auto& c : grid) {
    os << hash_hex(c.config_hash()) << ',' << c.d << ',' << c.k << ',' << c.M
       << ",\"" << c.canonical_string() << "\"\n";
  }
}

std::vector<ConfigKey> config_keys(const std::vector<ExperimentConfig>& grid) {
  std::vector<ConfigKey> keys;
  keys.reserve(grid.size());
  for (const auto& c : grid)
    keys.push_back({c.config_hash(), c.d, c.k, c.M});
  return keys;
}

std::vector<ConfigKey> read_configs_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("read_configs_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kConfigsSchema)
    throw ConfigError("read_configs_csv: unsupported schema in " + path.string());
  std::getline(is, line);  // header
  std::vector<ConfigKey> keys;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line, ',');
    if (f.size() < 4)
      throw ConfigError("read_configs_csv: malformed row in " + path.string());
    ConfigKey key;
    key.hash = std::stoull(f[0], nullptr, 16);
    key.d = std::stoi(f[1]);
    key.k = std::stoi(f[2]);
    key.M = std::stoi(f[3]);
    keys.push_back(key);
  }
  return keys;
}

}  // namespace sharedrep
