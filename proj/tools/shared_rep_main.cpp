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

// shared-rep: simulation and estimation harness for shared low-dimensional
// linear representations across heterogeneous clients.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "sharedrep/config.hpp"
#include "sharedrep/dataset_io.hpp"
#include "sharedrep/diversity.hpp"
#include "sharedrep/error.hpp"
#include "sharedrep/estimate_io.hpp"
#include "sharedrep/estimators.hpp"
#include "sharedrep/model.hpp"
#include "sharedrep/phase.hpp"
#include "sharedrep/plot.hpp"
#include "sharedrep/sweep.hpp"
#include "sharedrep/transfer.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sharedrep;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  std::string config_file;
  std::string profile = "desk";
  std::optional<std::uint64_t> seed;
  int parallelism = 1;
  std::string out_dir = ".";
};

ExperimentConfig base_profile(const std::string& name) {
  if (name == "desk") return desk_profile();
  if (name == "paper") return paper_profile();
  throw ConfigError("unknown profile: " + name + " (expected desk or paper)");
}

std::vector<ExperimentConfig> load_grid(const CommonOptions& opt) {
  ExperimentConfig base = base_profile(opt.profile);
  std::vector<ExperimentConfig> grid;
  if (!opt.config_file.empty())
    grid = parse_config_file(opt.config_file, base);
  else
    grid = {base};
  if (opt.seed)
    for (auto& c : grid) c.master_seed = *opt.seed;
  for (auto& c : grid) c.validate();
  return grid;
}

int cmd_generate(const CommonOptions& opt) {
  const auto grid = load_grid(opt);
  const ExperimentConfig& config = grid.front();
  if (grid.size() > 1)
    std::fprintf(stderr, "generate: grid has %zu entries, using the first\n",
                 grid.size());
  GroundTruth gt =
      generate_ground_truth(config.d, config.k, config.M, config.gamma,
                            config.alpha, config.config_hash());
  gt.noise_sigma = config.sigma;
  const auto partitions =
      sample_partitions(config.partition, config.M, config.config_hash());
  const std::uint64_t data_seed = derive_seed(config.master_seed, 0x74726961);
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
      dataset = sample_nonlinear_dataset(gt, LinkSpec::relu_network(),
                                         partitions, data_seed);
      break;
  }
  save_bundle(opt.out_dir, dataset, &gt,
              {{"config_hash", hash_hex(config.config_hash())}});
  std::printf("wrote bundle with %d clients (%lld samples) to %s\n",
              dataset.client_count(), dataset.N, opt.out_dir.c_str());
  return 0;
}

int cmd_estimate(const CommonOptions& opt, const std::string& data_dir,
                 const std::string& estimator_name, int k_override,
                 const std::string& out_file) {
  const FederatedDataset dataset = load_dataset(data_dir);
  const auto gt = load_ground_truth(data_dir);
  int k = k_override;
  if (k <= 0) {
    if (!gt)
      throw ConfigError("estimate: bundle has no ground truth; pass --k");
    k = gt->k;
  }
  const EstimatorSpec spec = EstimatorSpec::parse(estimator_name);
  SubspaceEstimate est;
  switch (spec.kind) {
    case EstimatorSpec::Kind::kReplica:
      est = estimator_replica(dataset, k);
      break;
    case EstimatorSpec::Kind::kMultigroup:
      est = estimator_multigroup(dataset, k, spec.groups);
      break;
    case EstimatorSpec::Kind::kMom:
      est = estimator_mom(dataset, k);
      break;
    case EstimatorSpec::Kind::kPairwise:
      est = estimator_pairwise(dataset, k);
      break;
  }
  est.source = spec.name();

  EstimateMetadata meta;
  meta.estimator = spec.name();
  meta.seed = opt.seed.value_or(0);
  const auto manifest = read_bundle_manifest(data_dir);
  if (auto it = manifest.find("config_hash"); it != manifest.end())
    meta.config_hash = it->second;
  const fs::path out =
      out_file.empty() ? fs::path(opt.out_dir) / "estimate.csv" : fs::path(out_file);
  save_subspace_estimate(out, est, meta);
  std::printf("wrote %s (%d x %d basis, estimator %s)\n", out.string().c_str(),
              static_cast<int>(est.basis.rows()), static_cast<int>(est.basis.cols()),
              spec.name().c_str());
  if (gt) {
    const double err = principal_angle_distance(est.basis, gt->B_star);
    std::printf("sin-theta error against bundled ground truth: %.6f\n", err);
  }
  return 0;
}

int cmd_sweep(const CommonOptions& opt, bool timing, bool emit_svg) {
  const auto grid = load_grid(opt);
  const SweepResult result = sweep(grid, opt.parallelism);
  fs::create_directories(opt.out_dir);
  const fs::path results_path = fs::path(opt.out_dir) / "results.csv";
  const fs::path configs_path = fs::path(opt.out_dir) / "configs.csv";
  write_results_csv(results_path, result, timing);
  write_configs_csv(configs_path, grid);
  std::printf("wrote %zu rows to %s\n", result.rows.size(),
              results_path.string().c_str());
  (void)emit_svg;
  return 0;
}

int cmd_transfer(const std::string& estimate_file, const std::string& client_file,
                 std::optional<double> epsilon, double delta, double clip,
                 std::uint64_t seed, const std::string& out_file) {
  const auto [estimate, meta] = load_subspace_estimate(estimate_file);
  const ClientData client = load_client_csv(client_file);
  TransferEstimate fit;
  if (epsilon)
    fit = private_fit_new_client(estimate, client.X, client.y, *epsilon, delta,
                                 clip, seed);
  else
    fit = fit_new_client(estimate, client.X, client.y);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_file.empty()) {
    file.open(out_file);
    if (!file) throw ConfigError("transfer: cannot open " + out_file);
    os = &file;
  }
  auto full = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  *os << "component,alpha_hat\n";
  for (Eigen::Index r = 0; r < fit.alpha_hat.size(); ++r)
    *os << r << ',' << full(fit.alpha_hat(r)) << '\n';
  *os << "component,theta_hat\n";
  for (Eigen::Index r = 0; r < fit.theta_hat.size(); ++r)
    *os << r << ',' << full(fit.theta_hat(r)) << '\n';
  if (fit.privacy)
    std::fprintf(stderr, "privacy: epsilon=%g delta=%g noise_scale=%g\n",
                 fit.privacy->epsilon, fit.privacy->delta,
                 fit.privacy->noise_scale);
  if (fit.underdetermined)
    std::fprintf(stderr, "warning: projected design underdetermined (n < k); "
                         "min-norm solution returned\n");
  return 0;
}

int cmd_phase(double beta, double gamma, double delta) {
  std::printf("region %s\n", to_string(classify_phase(beta, gamma, delta)).c_str());
  return 0;
}

int cmd_plot(const std::string& results_file, const std::string& configs_file,
             const std::string& recipe_name_arg, const std::string& out_dir,
             bool svg) {
  const SweepResult result = read_results_csv(results_file);
  const auto keys = read_configs_csv(configs_file);
  const FigureRecipe recipe = parse_recipe(recipe_name_arg);
  const auto files = emit_plot_data(result, keys, recipe, out_dir, svg);
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shared-rep: spectral estimation of shared linear representations"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto add_common = [&](CLI::App* cmd, bool with_parallelism) {
    cmd->add_option("--config", opt.config_file, "key = value config file");
    cmd->add_option("--profile", opt.profile, "desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--seed", opt.seed, "master seed override");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    if (with_parallelism)
      cmd->add_option("--parallelism", opt.parallelism, "worker thread count")
          ->check(CLI::PositiveNumber);
  };

  // generate
  auto* generate = app.add_subcommand("generate", "sample a dataset bundle");
  add_common(generate, false);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "run one estimator on a bundle");
  std::string data_dir, estimator_name = "replica", estimate_out;
  int k_override = 0;
  estimate->add_option("--data", data_dir, "bundle directory")->required();
  estimate->add_option("--estimator", estimator_name,
                       "replica | multigroup(g) | mom | pairwise");
  estimate->add_option("--k", k_override, "subspace dimension override");
  estimate->add_option("--out", estimate_out, "output estimate file");
  add_common(estimate, false);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a seeded experiment sweep");
  bool timing = false;
  sweep_cmd->add_flag("--timing", timing,
                      "record wall-clock times (breaks byte determinism)");
  add_common(sweep_cmd, true);

  // transfer
  auto* transfer = app.add_subcommand(
      "transfer", "fit a new client on a saved representation");
  std::string estimate_file, client_file, transfer_out;
  double delta = 1e-5, clip = 1.0;
  std::optional<double> epsilon;
  std::uint64_t transfer_seed = 0;
  transfer->add_option("--estimate", estimate_file, "saved estimate file")
      ->required();
  transfer->add_option("--client", client_file, "client CSV (x_1..x_d,y)")
      ->required();
  transfer->add_option("--epsilon", epsilon, "privacy budget (enables DP fit)");
  transfer->add_option("--delta", delta, "privacy delta");
  transfer->add_option("--clip", clip, "per-sample clip bound");
  transfer->add_option("--seed", transfer_seed, "noise seed");
  transfer->add_option("--out", transfer_out, "output file (default stdout)");

  // phase
  auto* phase = app.add_subcommand("phase", "classify a scaling triple");
  double beta = 0, gamma_exp = 0, delta_exp = 0;
  phase->add_option("--beta", beta, "n = k^beta")->required();
  phase->add_option("--gamma", gamma_exp, "M = k^{gamma+1}")->required();
  phase->add_option("--delta", delta_exp, "d = k^{delta+1}")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "emit per-series plot data");
  std::string results_file, configs_file, recipe = "fig2_style", plot_out = ".";
  bool svg = false;
  plot->add_option("--results", results_file, "results.csv from sweep")->required();
  plot->add_option("--configs", configs_file, "configs.csv from sweep")->required();
  plot->add_option("--recipe", recipe,
                   "fig2_style | fig3_style | fig4_style | fig5_style");
  plot->add_option("--out-dir", plot_out, "output directory");
  plot->add_flag("--svg", svg, "also write an SVG chart");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(opt);
    if (estimate->parsed())
      return cmd_estimate(opt, data_dir, estimator_name, k_override, estimate_out);
    if (sweep_cmd->parsed()) return cmd_sweep(opt, timing, false);
    if (transfer->parsed())
      return cmd_transfer(estimate_file, client_file, epsilon, delta, clip,
                          transfer_seed, transfer_out);
    if (phase->parsed()) return cmd_phase(beta, gamma_exp, delta_exp);
    if (plot->parsed())
      return cmd_plot(results_file, configs_file, recipe, plot_out, svg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const InsufficientDataError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return 0;
}
