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

#include "sharedrep/subspace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "sharedrep/error.hpp"

namespace sharedrep {

namespace {

void check_orthonormal(const Eigen::MatrixXd& B, double tol,
                       const char* which) {
  const Eigen::MatrixXd gram = B.transpose() * B;
  const double dev =
      (gram - Eigen::MatrixXd::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw NumericError(std::string("principal_angle_distance: ") + which +
                       " is not orthonormal within tolerance");
}

}  // namespace

double principal_angle_distance(const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& B_prime,
                                double ortho_tol) {
  if (B.rows() != B_prime.rows() || B.cols() != B_prime.cols())
    throw DimensionError("principal_angle_distance: shape mismatch");
  if (B.cols() == 0 || B.cols() > B.rows())
    throw DimensionError("principal_angle_distance: need d x k with 1 <= k <= d");
  check_orthonormal(B, ortho_tol, "first argument");
  check_orthonormal(B_prime, ortho_tol, "second argument");

  // The projector difference is symmetric; its spectral norm is the largest
  // absolute eigenvalue.
  const Eigen::MatrixXd diff = B * B.transpose() - B_prime * B_prime.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("principal_angle_distance: eigendecomposition failed");
  const double dist = es.eigenvalues().cwiseAbs().maxCoeff();
  // Clamp tiny rounding excursions past the exact range.
  return std::clamp(dist, 0.0, 1.0);
}

SubspaceEstimate top_k_singular_subspace(const Eigen::MatrixXd& Z, int k,
                                         SingularSide side, double gap_tol) {
  if (Z.rows() != Z.cols())
    throw DimensionError("top_k_singular_subspace: Z must be square");
  const int d = static_cast<int>(Z.rows());
  if (k < 1 || k > d)
    throw DimensionError("top_k_singular_subspace: need 1 <= k <= d");
  if (!Z.allFinite())
    throw NumericError("top_k_singular_subspace: Z has non-finite entries");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SubspaceEstimate est;
  est.basis = (side == SingularSide::kLeft) ? svd.matrixU().leftCols(k)
                                            : svd.matrixV().leftCols(k);
  est.source = "svd";
  if (k < d) {
    const double gap = svd.singularValues()(k - 1) - svd.singularValues()(k);
    est.gap_degenerate = gap <= gap_tol;
  }
  return est;
}

WedinCheck wedin_ratio(const Eigen::MatrixXd& B_hat,
                       const Eigen::MatrixXd& B_star,
                       double perturbation_norm, double sigma_k_star) {
  if (sigma_k_star <= 0.0)
    throw ConfigError("wedin_ratio: sigma_k_star must be positive");
  WedinCheck out;
  out.bound = 2.0 * perturbation_norm / sigma_k_star;
  out.distance = principal_angle_distance(B_hat, B_star);
  if (out.bound > 1.0) {
    out.vacuous = true;
    out.satisfied = true;  // distance is capped at 1 by definition
  } else {
    out.satisfied = out.distance <= out.bound;
  }
  return out;
}

}  // namespace sharedrep
