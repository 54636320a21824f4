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

#include "sharedrep/transfer.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "sharedrep/error.hpp"
#include "sharedrep/random.hpp"

namespace sharedrep {

namespace {

void check_inputs(const SubspaceEstimate& B_hat, const Eigen::MatrixXd& X,
                  const Eigen::VectorXd& y, const char* who) {
  if (X.rows() < 1) throw DimensionError(std::string(who) + ": need n >= 1");
  if (X.rows() != y.size())
    throw DimensionError(std::string(who) + ": X rows must match y length");
  if (X.cols() != B_hat.basis.rows())
    throw DimensionError(std::string(who) + ": X columns must match basis rows");
  if (!X.allFinite() || !y.allFinite())
    throw NumericError(std::string(who) + ": non-finite inputs");
}

// Minimum-norm solution of the normal equations G alpha = b through a
// symmetric pseudoinverse; null(G) = null(A), so this is also the
// minimum-norm least squares solution.
Eigen::VectorXd solve_normal_equations(const Eigen::MatrixXd& G,
                                       const Eigen::VectorXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  if (es.info() != Eigen::Success)
    throw NumericError("fit_new_client: eigendecomposition failed");
  const double cutoff = es.eigenvalues().cwiseAbs().maxCoeff() * 1e-12;
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(G.rows());
  for (Eigen::Index r = 0; r < G.rows(); ++r) {
    const double lam = es.eigenvalues()(r);
    if (std::abs(lam) > cutoff) {
      const Eigen::VectorXd v = es.eigenvectors().col(r);
      alpha += v.dot(b) / lam * v;
    }
  }
  return alpha;
}

}  // namespace

TransferEstimate fit_new_client(const SubspaceEstimate& B_hat,
                                const Eigen::MatrixXd& X_new,
                                const Eigen::VectorXd& y_new) {
  check_inputs(B_hat, X_new, y_new, "fit_new_client");
  const Eigen::MatrixXd A = X_new * B_hat.basis;  // n x k projected design
  TransferEstimate out;
  out.method = "transfer";
  out.underdetermined = A.rows() < A.cols();
  out.alpha_hat = solve_normal_equations(A.transpose() * A, A.transpose() * y_new);
  out.theta_hat = B_hat.basis * out.alpha_hat;
  return out;
}

Eigen::VectorXd independent_baseline(const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& y) {
  if (X.rows() < 1) throw DimensionError("independent_baseline: need n >= 1");
  if (X.rows() != y.size())
    throw DimensionError("independent_baseline: X rows must match y length");
  return X.completeOrthogonalDecomposition().solve(y);
}

double gaussian_mechanism_scale(double epsilon, double delta,
                                double clip_bound, int n) {
  return clip_bound * std::sqrt(2.0 * std::log(1.25 / delta)) /
         (static_cast<double>(n) * epsilon);
}

TransferEstimate private_fit_new_client(const SubspaceEstimate& B_hat,
                                        const Eigen::MatrixXd& X_new,
                                        const Eigen::VectorXd& y_new,
                                        double epsilon, double delta,
                                        double clip_bound, std::uint64_t seed) {
  if (epsilon <= 0.0 || delta <= 0.0 || delta >= 1.0)
    throw ConfigError("private_fit_new_client: need epsilon > 0, delta in (0,1)");
  if (clip_bound <= 0.0)
    throw ConfigError("private_fit_new_client: clip_bound must be positive");
  check_inputs(B_hat, X_new, y_new, "private_fit_new_client");

  const int n = static_cast<int>(X_new.rows());
  const int k = static_cast<int>(B_hat.basis.cols());
  const Eigen::MatrixXd A = X_new * B_hat.basis;

  // Normal equations with each sample's cross term y_j a_j clipped in l2;
  // the clipped mean has sensitivity clip_bound / n.
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd g = y_new(j) * A.row(j).transpose();
    const double norm = g.norm();
    if (norm > clip_bound) g *= clip_bound / norm;
    b += g;
  }
  b /= static_cast<double>(n);
  const Eigen::MatrixXd G = A.transpose() * A / static_cast<double>(n);

  TransferEstimate out;
  out.method = "private_transfer";
  out.underdetermined = n < k;
  out.alpha_hat = solve_normal_equations(G, b);

  PrivacyParams privacy;
  privacy.epsilon = epsilon;
  privacy.delta = delta;
  privacy.clip_bound = clip_bound;
  privacy.noise_scale = gaussian_mechanism_scale(epsilon, delta, clip_bound, n);

  RandomStream rng(seed, 0x44505249);
  for (int r = 0; r < k; ++r)
    out.alpha_hat(r) += privacy.noise_scale * rng.normal();

  out.privacy = privacy;
  out.theta_hat = B_hat.basis * out.alpha_hat;
  return out;
}

}  // namespace sharedrep
