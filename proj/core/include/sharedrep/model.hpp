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

#ifndef SHAREDREP_MODEL_HPP_
#define SHAREDREP_MODEL_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sharedrep/error.hpp"
#include "sharedrep/random.hpp"

namespace sharedrep {

// ---------------------------------------------------------------------------
// Covariance descriptors
// ---------------------------------------------------------------------------

enum class GammaKind { kIdentity, kDiagonal, kDenseSpd };

// Per-client covariate covariance.  Identity is stored implicitly, diagonal
// as its diagonal, dense as the full SPD matrix plus a cached symmetric
// square root.
class Covariance {
 public:
  static Covariance identity(int d);
  static Covariance diagonal(Eigen::VectorXd diag);
  static Covariance dense(const Eigen::MatrixXd& spd);

  GammaKind kind() const { return kind_; }
  int dim() const { return dim_; }

  Eigen::MatrixXd matrix() const;
  Eigen::MatrixXd inverse() const;
  // Applies the symmetric square root: returns Gamma^{1/2} * g.
  Eigen::VectorXd apply_sqrt(const Eigen::VectorXd& g) const;
  // Solves Gamma * x = v.
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
  double condition() const;

 private:
  Covariance() = default;
  GammaKind kind_ = GammaKind::kIdentity;
  int dim_ = 0;
  Eigen::VectorXd diag_;       // kDiagonal
  Eigen::MatrixXd dense_;      // kDenseSpd
  Eigen::MatrixXd dense_sqrt_; // kDenseSpd, cached
};

// How the per-client covariances are drawn.
struct GammaProfile {
  GammaKind kind = GammaKind::kIdentity;
  // kDiagonal: entries drawn log-uniformly in [diag_lo, diag_hi].
  double diag_lo = 1.0;
  double diag_hi = 1.0;
  // kDenseSpd: eigenvalues drawn log-uniformly in [1/sqrt(spd_cond), sqrt(spd_cond)].
  double spd_cond = 10.0;
  // Hard cap on lambda_max/lambda_min for every generated Gamma_i.
  double cond_bound = 10.0;

  static GammaProfile identity();
  static GammaProfile diagonal(double lo, double hi, double cond_bound = 10.0);
  static GammaProfile dense_spd(double cond, double cond_bound = 10.0);

  std::string describe() const;
};

// ---------------------------------------------------------------------------
// Client parameter schemes
// ---------------------------------------------------------------------------

struct AlphaScheme {
  enum class Kind { kGaussian, kBasis, kExplicit };
  Kind kind = Kind::kGaussian;
  // kGaussian: alpha_i ~ N(0, scale^2 I_k / k), resampled until
  // ||alpha_i|| <= bound.
  double scale = 1.0;
  double bound = 4.0;
  Eigen::MatrixXd explicit_alphas;  // kExplicit: k x M

  static AlphaScheme gaussian(double scale = 1.0, double bound = 4.0);
  // alpha_i = e_{(i mod k) + 1}; cycles through the standard basis.
  static AlphaScheme basis();
  static AlphaScheme explicit_matrix(Eigen::MatrixXd alphas);

  std::string describe() const;
};

enum class CovariateFamily { kGaussian, kRademacher };

// ---------------------------------------------------------------------------
// Ground truth and datasets
// ---------------------------------------------------------------------------

struct GroundTruth {
  int d = 0;
  int k = 0;
  int M = 0;
  Eigen::MatrixXd B_star;             // d x k, orthonormal columns
  Eigen::MatrixXd alphas;             // k x M
  std::vector<Covariance> gammas;     // size M
  double noise_sigma = 1.0;
  CovariateFamily covariates = CovariateFamily::kGaussian;

  // Local regression parameter theta_i = Gamma_i^{-1} B* alpha_i.
  Eigen::VectorXd theta(int client) const;
  bool all_gammas_identity() const;
};

struct ClientData {
  Eigen::MatrixXd X;  // n_i x d
  Eigen::VectorXd y;  // n_i
};

struct FederatedDataset {
  std::vector<ClientData> clients;
  std::vector<int> partitions;  // n_i
  long long N = 0;              // sum of partitions

  int client_count() const { return static_cast<int>(clients.size()); }
  int dim() const { return clients.empty() ? 0 : static_cast<int>(clients[0].X.cols()); }
  void validate() const;
};

// Response model for nonlinear teachers.
struct LinkSpec {
  enum class Kind { kLinear, kLogistic, kReluNetwork, kCustomLipschitz };
  Kind kind = Kind::kLinear;
  // Optional common head for kReluNetwork; when absent each client uses its
  // own alpha_i from the ground truth.
  std::optional<Eigen::VectorXd> head_weights;
  double lipschitz_bound = 1.0;
  // kCustomLipschitz: h(u), u in R^k.
  std::function<double(const Eigen::VectorXd&)> link;

  static LinkSpec linear();
  static LinkSpec logistic();
  static LinkSpec relu_network();
  static LinkSpec relu_network(Eigen::VectorXd head);
  static LinkSpec custom(std::function<double(const Eigen::VectorXd&)> h,
                         double lipschitz_bound);
};

// ---------------------------------------------------------------------------
// Partition schemes
// ---------------------------------------------------------------------------

struct PartitionScheme {
  enum class Kind { kEqual, kUniform, kExplicit };
  Kind kind = Kind::kEqual;
  int equal_n = 0;
  int uniform_lo = 0;
  int uniform_hi = 0;
  std::vector<int> explicit_sizes;

  static PartitionScheme equal(int n);
  static PartitionScheme uniform(int lo, int hi);
  static PartitionScheme explicit_sizes_of(std::vector<int> sizes);

  std::string describe() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Draws B* by orthonormalizing a d x k standard Gaussian matrix, alphas per
// scheme, and covariances per profile.  Identical inputs give bit-identical
// output.
GroundTruth generate_ground_truth(int d, int k, int M,
                                  const GammaProfile& gamma_profile,
                                  const AlphaScheme& alpha_scheme,
                                  std::uint64_t seed);

std::vector<int> sample_partitions(const PartitionScheme& scheme, int M,
                                   std::uint64_t seed);

// Linear teacher: x_ij ~ N(0, Gamma_i), y_ij = x_ij^T theta_i + noise, with
// theta_i = Gamma_i^{-1} B* alpha_i.  Client i draws from an independent
// stream derived from (seed, i).
FederatedDataset sample_dataset(const GroundTruth& gt,
                                const std::vector<int>& partitions,
                                std::uint64_t seed);

// Nonlinear teachers require identity covariances.
FederatedDataset sample_nonlinear_dataset(const GroundTruth& gt,
                                          const LinkSpec& link,
                                          const std::vector<int>& partitions,
                                          std::uint64_t seed);

}  // namespace sharedrep

#endif  // SHAREDREP_MODEL_HPP_
