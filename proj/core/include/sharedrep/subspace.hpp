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

#ifndef SHAREDREP_SUBSPACE_HPP_
#define SHAREDREP_SUBSPACE_HPP_

#include <string>

#include <Eigen/Core>

namespace sharedrep {

struct SubspaceEstimate {
  Eigen::MatrixXd basis;  // d x k, orthonormal columns
  std::string source;     // estimator name tag
  // Set when the singular gap sigma_k - sigma_{k+1} vanishes and the
  // subspace is therefore not unique.
  bool gap_degenerate = false;
};

// Spectral norm of B B^T - B' B'^T; a rotation-invariant subspace metric in
// [0, 1].  Inputs must be orthonormal d x k within `ortho_tol`.
double principal_angle_distance(const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& B_prime,
                                double ortho_tol = 1e-6);

enum class SingularSide { kLeft, kRight };

// Top-k singular subspace of Z on the requested side, singular values
// descending.  A vanishing gap sigma_k - sigma_{k+1} (within gap_tol) sets
// gap_degenerate on the result; the decomposition's fixed ordering breaks
// the tie deterministically.
SubspaceEstimate top_k_singular_subspace(const Eigen::MatrixXd& Z, int k,
                                         SingularSide side = SingularSide::kLeft,
                                         double gap_tol = 1e-12);

struct WedinCheck {
  double bound = 0.0;     // 2 * perturbation_norm / sigma_k_star
  double distance = 0.0;  // principal angle distance actually observed
  bool satisfied = false;
  // True when bound > 1: the distance is capped at 1 by definition, so the
  // check holds vacuously.
  bool vacuous = false;
};

WedinCheck wedin_ratio(const Eigen::MatrixXd& B_hat,
                       const Eigen::MatrixXd& B_star,
                       double perturbation_norm, double sigma_k_star);

}  // namespace sharedrep

#endif  // SHAREDREP_SUBSPACE_HPP_
