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

#ifndef SHAREDREP_ESTIMATORS_HPP_
#define SHAREDREP_ESTIMATORS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sharedrep/model.hpp"
#include "sharedrep/subspace.hpp"

namespace sharedrep {

// ---------------------------------------------------------------------------
// Averaging boundary
//
// The replica and multigroup estimators consume only the structures below.
// Raw rows never cross this boundary: in a federated deployment each client
// would transmit exactly these averaged vectors.
// ---------------------------------------------------------------------------

struct ReplicaAverages {
  // z_bar_i = (2/n_i') sum over the first half of y_ij x_ij,
  // z_tilde_i over the second half; n_i' is n_i rounded down to even and the
  // leftover sample of an odd client is dropped.
  std::vector<Eigen::VectorXd> first;
  std::vector<Eigen::VectorXd> second;
  std::vector<int> effective_n;
  int dim = 0;
};

struct GroupAverages {
  // groups[i][r] = sum_{j in G_ir} y_ij x_ij / sqrt(m_i) with m_i =
  // floor(n_i/g_i); the n_i mod g_i leftover samples are unused.
  std::vector<std::vector<Eigen::VectorXd>> groups;
  std::vector<int> group_sizes;
  int dim = 0;
};

// Disjoint per-client index groups of equal size floor(n_i/g_i).
struct SplitPlan {
  std::vector<int> groups_per_client;
  std::vector<std::vector<std::vector<int>>> assignment;  // [client][group][row]
};

// Positional split: group r of client i takes rows [r*m_i, (r+1)*m_i).
SplitPlan make_split_plan(const std::vector<int>& partitions,
                          const std::vector<int>& groups_per_client);
// Same sizes, but rows are assigned after a seeded shuffle; for externally
// supplied data whose row order may not be exchangeable.
SplitPlan make_split_plan_shuffled(const std::vector<int>& partitions,
                                   const std::vector<int>& groups_per_client,
                                   std::uint64_t seed);

ReplicaAverages local_replica_averages(const FederatedDataset& dataset);
// Seeded-shuffle variant for externally supplied data whose row order may
// not be exchangeable; the halves are drawn from a per-client permutation.
ReplicaAverages local_replica_averages(const FederatedDataset& dataset,
                                       std::uint64_t shuffle_seed);
GroupAverages local_group_averages(const FederatedDataset& dataset,
                                   const SplitPlan& plan);

// Z = sum_i n_i' z_bar_i z_tilde_i^T.
Eigen::MatrixXd replica_cross_matrix(const ReplicaAverages& averages);
// Z_g = sum_i 1/sqrt(g_i (g_i - 1)) sum_{r != s} z_ir z_is^T (symmetric:
// both orders of (r, s) are included).
Eigen::MatrixXd multigroup_cross_matrix(const GroupAverages& averages);
// Z_D = sum_i w_i/(n_i(n_i-1)) sum_{j1 != j2} y_ij1 y_ij2 x_ij1 x_ij2^T via
// the rank-reduction identity; w must be positive and sum to one.
Eigen::MatrixXd pairwise_cross_matrix(const FederatedDataset& dataset,
                                      const Eigen::VectorXd& weights);

// ---------------------------------------------------------------------------
// Subspace estimators
// ---------------------------------------------------------------------------

// Replica spectral estimator: top-k left singular subspace of Z.
SubspaceEstimate estimator_replica(const FederatedDataset& dataset, int k);

// Z_g framework; g_i groups per client, 2 <= g_i <= n_i.
SubspaceEstimate estimator_multigroup(const FederatedDataset& dataset, int k,
                                      const std::vector<int>& groups_per_client);
SubspaceEstimate estimator_multigroup(const FederatedDataset& dataset, int k,
                                      int groups);

// Method of moments: top-k eigenvectors of Z_T = sum_ij y_ij^2 x_ij x_ij^T.
SubspaceEstimate estimator_mom(const FederatedDataset& dataset, int k);

// Pairwise estimator: Z_D = sum_i w_i/(n_i(n_i-1)) sum_{j1 != j2} y_ij1
// y_ij2 x_ij1 x_ij2^T, computed with the rank-reduction identity
// sum_{j1 != j2} a_j1 a_j2^T = (sum a)(sum a)^T - sum a_j a_j^T.
// Weights must be positive and sum to one.
SubspaceEstimate estimator_pairwise(const FederatedDataset& dataset, int k,
                                    const Eigen::VectorXd& weights);
SubspaceEstimate estimator_pairwise(const FederatedDataset& dataset, int k);

// Mean-estimation warm-up: top-k eigenvectors of sum_i n_i u_bar_i u_bar_i^T
// over per-client sample matrices (rows are observations u_ij).
SubspaceEstimate mean_estimation_pca(const std::vector<Eigen::MatrixXd>& samples,
                                     int k);

// ---------------------------------------------------------------------------
// Algebraic helpers
// ---------------------------------------------------------------------------

// Lambda_i = Gamma^{-1} B (B^T Gamma^{-1} Gamma_hat Gamma^{-1} B)^+ B^T
// Gamma^{-1}; pseudoinverse with relative rank tolerance `pinv_tol`.
Eigen::MatrixXd lambda_operator(const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& Gamma,
                                const Eigen::MatrixXd& Gamma_hat,
                                double pinv_tol = 1e-10);

// Analytic mean of the replica cross matrix:
// E[Z] = B* (sum_i n_i' alpha_i alpha_i^T) (B*)^T with n_i' the even-rounded
// partition actually used by the estimator.
Eigen::MatrixXd expected_z(const GroundTruth& gt,
                           const std::vector<int>& partitions);

// Mean of the single-average matrix sum_i n_i zhat_i zhat_i^T for Gaussian
// covariates, including the fourth-moment and noise terms:
// B*(sum (n_i+1) a a^T)B*^T + sum_i (theta_i^T Gamma_i theta_i + sigma^2)
// Gamma_i.  Demonstrates why single averages fail for non-identity Gamma.
Eigen::MatrixXd expected_z_single_average(const GroundTruth& gt,
                                          const std::vector<int>& partitions);

}  // namespace sharedrep

#endif  // SHAREDREP_ESTIMATORS_HPP_
