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

#include "sharedrep/estimators.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "sharedrep/error.hpp"
#include "sharedrep/random.hpp"

namespace sharedrep {

namespace {

void check_finite(const FederatedDataset& dataset, const char* who) {
  for (const auto& c : dataset.clients)
    if (!c.X.allFinite() || !c.y.allFinite())
      throw NumericError(std::string(who) + ": dataset has non-finite entries");
}

// Top-k eigenvectors (descending eigenvalue) of a symmetric matrix, with the
// same degenerate-gap flag as the SVD path.
SubspaceEstimate top_k_eigen_subspace(const Eigen::MatrixXd& S, int k,
                                      const char* source) {
  const int d = static_cast<int>(S.rows());
  if (k < 1 || k > d)
    throw DimensionError("top_k_eigen_subspace: need 1 <= k <= d");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success)
    throw NumericError("top_k_eigen_subspace: eigendecomposition failed");
  SubspaceEstimate est;
  est.basis = es.eigenvectors().rightCols(k).rowwise().reverse();
  est.source = source;
  if (k < d) {
    const double gap = es.eigenvalues()(d - k) - es.eigenvalues()(d - k - 1);
    est.gap_degenerate = gap <= 1e-12;
  }
  return est;
}

}  // namespace

// ---------------------------------------------------------------------------
// Splits and averages
// ---------------------------------------------------------------------------

SplitPlan make_split_plan(const std::vector<int>& partitions,
                          const std::vector<int>& groups_per_client) {
  if (partitions.size() != groups_per_client.size())
    throw DimensionError("make_split_plan: length mismatch");
  SplitPlan plan;
  plan.groups_per_client = groups_per_client;
  plan.assignment.resize(partitions.size());
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    const int n = partitions[i];
    const int g = groups_per_client[i];
    if (g < 2)
      throw ConfigError("make_split_plan: need g_i >= 2");
    if (g > n)
      throw ConfigError("make_split_plan: g_i exceeds n_i at client " +
                        std::to_string(i));
    const int m = n / g;
    plan.assignment[i].resize(g);
    for (int r = 0; r < g; ++r) {
      plan.assignment[i][r].resize(m);
      std::iota(plan.assignment[i][r].begin(), plan.assignment[i][r].end(),
                r * m);
    }
  }
  return plan;
}

SplitPlan make_split_plan_shuffled(const std::vector<int>& partitions,
                                   const std::vector<int>& groups_per_client,
                                   std::uint64_t seed) {
  SplitPlan plan = make_split_plan(partitions, groups_per_client);
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    RandomStream rng(derive_seed(seed, 0x53484c46, static_cast<std::uint64_t>(i)));
    std::vector<int> perm(partitions[i]);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = partitions[i] - 1; j > 0; --j)
      std::swap(perm[j], perm[rng.uniform_int(0, j)]);
    for (auto& group : plan.assignment[i])
      for (int& row : group) row = perm[row];
  }
  return plan;
}

ReplicaAverages local_replica_averages(const FederatedDataset& dataset) {
  dataset.validate();
  ReplicaAverages out;
  out.dim = dataset.dim();
  const int M = dataset.client_count();
  out.first.reserve(M);
  out.second.reserve(M);
  out.effective_n.reserve(M);
  for (int i = 0; i < M; ++i) {
    const int n = dataset.partitions[i];
    if (n < 2)
      throw InsufficientDataError(
          "local_replica_averages: client " + std::to_string(i) +
          " has n_i < 2");
    const int n_even = n - (n % 2);
    const int half = n_even / 2;
    const ClientData& c = dataset.clients[i];
    const double scale = 2.0 / n_even;
    Eigen::VectorXd z_bar =
        scale * (c.X.topRows(half).transpose() * c.y.head(half));
    Eigen::VectorXd z_tilde =
        scale * (c.X.middleRows(half, half).transpose() * c.y.segment(half, half));
    out.first.push_back(std::move(z_bar));
    out.second.push_back(std::move(z_tilde));
    out.effective_n.push_back(n_even);
  }
  return out;
}

ReplicaAverages local_replica_averages(const FederatedDataset& dataset,
                                       std::uint64_t shuffle_seed) {
  dataset.validate();
  ReplicaAverages out;
  out.dim = dataset.dim();
  const int M = dataset.client_count();
  for (int i = 0; i < M; ++i) {
    const int n = dataset.partitions[i];
    if (n < 2)
      throw InsufficientDataError(
          "local_replica_averages: client " + std::to_string(i) +
          " has n_i < 2");
    RandomStream rng(derive_seed(shuffle_seed, 0x53484c46,
                                 static_cast<std::uint64_t>(i)));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = n - 1; j > 0; --j)
      std::swap(perm[j], perm[rng.uniform_int(0, j)]);

    const int n_even = n - (n % 2);
    const int half = n_even / 2;
    const ClientData& c = dataset.clients[i];
    const double scale = 2.0 / n_even;
    Eigen::VectorXd z_bar = Eigen::VectorXd::Zero(out.dim);
    Eigen::VectorXd z_tilde = Eigen::VectorXd::Zero(out.dim);
    for (int j = 0; j < half; ++j)
      z_bar.noalias() += c.y(perm[j]) * c.X.row(perm[j]).transpose();
    for (int j = half; j < n_even; ++j)
      z_tilde.noalias() += c.y(perm[j]) * c.X.row(perm[j]).transpose();
    out.first.push_back(scale * z_bar);
    out.second.push_back(scale * z_tilde);
    out.effective_n.push_back(n_even);
  }
  return out;
}

GroupAverages local_group_averages(const FederatedDataset& dataset,
                                   const SplitPlan& plan) {
  dataset.validate();
  if (plan.assignment.size() != dataset.clients.size())
    throw DimensionError("local_group_averages: plan does not match dataset");
  GroupAverages out;
  out.dim = dataset.dim();
  const int M = dataset.client_count();
  out.groups.resize(M);
  out.group_sizes.resize(M);
  for (int i = 0; i < M; ++i) {
    const auto& groups = plan.assignment[i];
    const int m = static_cast<int>(groups.empty() ? 0 : groups[0].size());
    out.group_sizes[i] = m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    const ClientData& c = dataset.clients[i];
    out.groups[i].reserve(groups.size());
    for (const auto& rows : groups) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(out.dim);
      for (int row : rows) z.noalias() += c.y(row) * c.X.row(row).transpose();
      out.groups[i].push_back(scale * z);
    }
  }
  return out;
}

Eigen::MatrixXd replica_cross_matrix(const ReplicaAverages& averages) {
  const int d = averages.dim;
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < averages.first.size(); ++i)
    Z.noalias() += averages.effective_n[i] * averages.first[i] *
                   averages.second[i].transpose();
  return Z;
}

Eigen::MatrixXd multigroup_cross_matrix(const GroupAverages& averages) {
  const int d = averages.dim;
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(d, d);
  for (const auto& client : averages.groups) {
    const int g = static_cast<int>(client.size());
    if (g < 2)
      throw ConfigError("multigroup_cross_matrix: need at least 2 groups");
    const double norm = 1.0 / std::sqrt(static_cast<double>(g) * (g - 1));
    // sum_{r != s} z_r z_s^T = (sum z)(sum z)^T - sum z_r z_r^T
    Eigen::VectorXd total = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(d, d);
    for (const auto& z : client) {
      total += z;
      diag.noalias() += z * z.transpose();
    }
    Z.noalias() += norm * (total * total.transpose() - diag);
  }
  // Both (r, s) orders contribute; symmetrize away rounding residue.
  return 0.5 * (Z + Z.transpose());
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

SubspaceEstimate estimator_replica(const FederatedDataset& dataset, int k) {
  check_finite(dataset, "estimator_replica");
  if (k < 1 || k > dataset.dim())
    throw DimensionError("estimator_replica: need 1 <= k <= d");
  const ReplicaAverages averages = local_replica_averages(dataset);
  SubspaceEstimate est =
      top_k_singular_subspace(replica_cross_matrix(averages), k,
                              SingularSide::kLeft);
  est.source = "replica";
  return est;
}

SubspaceEstimate estimator_multigroup(const FederatedDataset& dataset, int k,
                                      const std::vector<int>& groups_per_client) {
  check_finite(dataset, "estimator_multigroup");
  if (k < 1 || k > dataset.dim())
    throw DimensionError("estimator_multigroup: need 1 <= k <= d");
  const SplitPlan plan = make_split_plan(dataset.partitions, groups_per_client);
  const GroupAverages averages = local_group_averages(dataset, plan);
  SubspaceEstimate est =
      top_k_singular_subspace(multigroup_cross_matrix(averages), k,
                              SingularSide::kLeft);
  est.source = "multigroup";
  return est;
}

SubspaceEstimate estimator_multigroup(const FederatedDataset& dataset, int k,
                                      int groups) {
  return estimator_multigroup(
      dataset, k, std::vector<int>(dataset.clients.size(), groups));
}

SubspaceEstimate estimator_mom(const FederatedDataset& dataset, int k) {
  check_finite(dataset, "estimator_mom");
  dataset.validate();
  const int d = dataset.dim();
  if (k < 1 || k > d) throw DimensionError("estimator_mom: need 1 <= k <= d");
  Eigen::MatrixXd Z_T = Eigen::MatrixXd::Zero(d, d);
  for (const auto& c : dataset.clients) {
    // X^T diag(y^2) X accumulated via a scaled copy to stay in GEMM.
    const Eigen::MatrixXd scaled =
        (c.X.array().colwise() * c.y.array().square()).matrix();
    Z_T.noalias() += scaled.transpose() * c.X;
  }
  Z_T = 0.5 * (Z_T + Z_T.transpose()).eval();
  SubspaceEstimate est = top_k_eigen_subspace(Z_T, k, "mom");
  return est;
}

Eigen::MatrixXd pairwise_cross_matrix(const FederatedDataset& dataset,
                                      const Eigen::VectorXd& weights) {
  dataset.validate();
  const int d = dataset.dim();
  const int M = dataset.client_count();
  if (weights.size() != M)
    throw DimensionError("pairwise_cross_matrix: weights length must equal M");
  if ((weights.array() <= 0.0).any())
    throw ConfigError("pairwise_cross_matrix: weights must be positive");
  if (std::abs(weights.sum() - 1.0) > 1e-8)
    throw ConfigError("pairwise_cross_matrix: weights must sum to 1");

  Eigen::MatrixXd Z_D = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < M; ++i) {
    const int n = dataset.partitions[i];
    if (n < 2)
      throw InsufficientDataError("pairwise_cross_matrix: client " +
                                  std::to_string(i) + " has n_i < 2");
    const ClientData& c = dataset.clients[i];
    const Eigen::VectorXd total = c.X.transpose() * c.y;  // sum y_j x_j
    const Eigen::MatrixXd scaled =
        (c.X.array().colwise() * c.y.array().square()).matrix();
    const Eigen::MatrixXd diag = scaled.transpose() * c.X;  // sum (y x)(y x)^T
    const double w = weights(i) / (static_cast<double>(n) * (n - 1));
    Z_D.noalias() += w * (total * total.transpose() - diag);
  }
  return Z_D;
}

SubspaceEstimate estimator_pairwise(const FederatedDataset& dataset, int k,
                                    const Eigen::VectorXd& weights) {
  check_finite(dataset, "estimator_pairwise");
  if (k < 1 || k > dataset.dim())
    throw DimensionError("estimator_pairwise: need 1 <= k <= d");
  SubspaceEstimate est = top_k_singular_subspace(
      pairwise_cross_matrix(dataset, weights), k, SingularSide::kLeft);
  est.source = "pairwise";
  return est;
}

SubspaceEstimate estimator_pairwise(const FederatedDataset& dataset, int k) {
  const int M = dataset.client_count();
  return estimator_pairwise(
      dataset, k, Eigen::VectorXd::Constant(M, 1.0 / M));
}

SubspaceEstimate mean_estimation_pca(const std::vector<Eigen::MatrixXd>& samples,
                                     int k) {
  if (samples.empty())
    throw InsufficientDataError("mean_estimation_pca: no clients");
  const int d = static_cast<int>(samples[0].cols());
  if (k < 1 || k > d) throw DimensionError("mean_estimation_pca: need 1 <= k <= d");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& U = samples[i];
    if (U.rows() < 1)
      throw InsufficientDataError("mean_estimation_pca: client " +
                                  std::to_string(i) + " is empty");
    if (U.cols() != d)
      throw DimensionError("mean_estimation_pca: inconsistent dimensions");
    const Eigen::VectorXd mean = U.colwise().mean().transpose();
    S.noalias() += static_cast<double>(U.rows()) * mean * mean.transpose();
  }
  SubspaceEstimate est = top_k_eigen_subspace(S, k, "mean_pca");
  return est;
}

// ---------------------------------------------------------------------------
// Algebraic helpers
// ---------------------------------------------------------------------------

namespace {

// Moore-Penrose pseudoinverse of a symmetric matrix with a relative rank
// cutoff.
Eigen::MatrixXd sym_pinv(const Eigen::MatrixXd& S, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  if (es.info() != Eigen::Success)
    throw NumericError("sym_pinv: eigendecomposition failed");
  const double cutoff = es.eigenvalues().cwiseAbs().maxCoeff() * tol;
  Eigen::VectorXd inv = es.eigenvalues();
  for (Eigen::Index r = 0; r < inv.size(); ++r)
    inv(r) = std::abs(inv(r)) > cutoff ? 1.0 / inv(r) : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd lambda_operator(const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& Gamma,
                                const Eigen::MatrixXd& Gamma_hat,
                                double pinv_tol) {
  const int d = static_cast<int>(B.rows());
  if (Gamma.rows() != d || Gamma.cols() != d || Gamma_hat.rows() != d ||
      Gamma_hat.cols() != d)
    throw DimensionError("lambda_operator: shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(Gamma);
  if (llt.info() != Eigen::Success)
    throw CovarianceError("lambda_operator: Gamma is not SPD");
  const Eigen::MatrixXd Gamma_inv_B =
      llt.solve(B);  // Gamma^{-1} B
  const Eigen::MatrixXd core =
      B.transpose() * llt.solve(Gamma_hat * Gamma_inv_B);
  return Gamma_inv_B * sym_pinv(core, pinv_tol) * Gamma_inv_B.transpose();
}

Eigen::MatrixXd expected_z(const GroundTruth& gt,
                           const std::vector<int>& partitions) {
  if (static_cast<int>(partitions.size()) != gt.M)
    throw DimensionError("expected_z: partitions length must equal M");
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(gt.k, gt.k);
  for (int i = 0; i < gt.M; ++i) {
    const int n_even = partitions[i] - (partitions[i] % 2);
    core.noalias() +=
        n_even * gt.alphas.col(i) * gt.alphas.col(i).transpose();
  }
  return gt.B_star * core * gt.B_star.transpose();
}

Eigen::MatrixXd expected_z_single_average(const GroundTruth& gt,
                                          const std::vector<int>& partitions) {
  if (static_cast<int>(partitions.size()) != gt.M)
    throw DimensionError("expected_z_single_average: partitions length must equal M");
  if (gt.covariates != CovariateFamily::kGaussian)
    throw ConfigError(
        "expected_z_single_average: fourth moments implemented for Gaussian "
        "covariates only");
  const double sigma2 = gt.noise_sigma * gt.noise_sigma;
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(gt.k, gt.k);
  Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(gt.d, gt.d);
  for (int i = 0; i < gt.M; ++i) {
    // E[n zhat zhat^T] = (n-1) B a a^T B^T + E[(x^T th)^2 x x^T] + s^2 Gamma
    // and for Gaussian x, E[(x^T th)^2 x x^T] =
    //   2 (Gamma th)(Gamma th)^T + (th^T Gamma th) Gamma = 2 B a a^T B^T + ...
    core.noalias() +=
        (partitions[i] + 1) * gt.alphas.col(i) * gt.alphas.col(i).transpose();
    const Eigen::VectorXd theta = gt.theta(i);
    const Eigen::MatrixXd Gamma = gt.gammas[i].matrix();
    const double quad = theta.dot(Gamma * theta);
    tail.noalias() += (quad + sigma2) * Gamma;
  }
  return gt.B_star * core * gt.B_star.transpose() + tail;
}

}  // namespace sharedrep
