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

#ifndef SHAREDREP_TRANSFER_HPP_
#define SHAREDREP_TRANSFER_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "sharedrep/subspace.hpp"

namespace sharedrep {

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double clip_bound = 0.0;
  double noise_scale = 0.0;  // per-coordinate Gaussian std dev added to alpha
};

struct TransferEstimate {
  Eigen::VectorXd alpha_hat;  // k
  Eigen::VectorXd theta_hat;  // d, equals basis * alpha_hat
  std::string method;
  std::optional<PrivacyParams> privacy;
  // n < k: the projected design is underdetermined and the minimum-norm
  // solution was returned.
  bool underdetermined = false;
};

// Least squares for a new client on top of a learned representation:
// alpha_hat = argmin ||X B alpha - y||^2 via the normal equations on the
// n x k projected design; minimum-norm solution when rank-deficient.
TransferEstimate fit_new_client(const SubspaceEstimate& B_hat,
                                const Eigen::MatrixXd& X_new,
                                const Eigen::VectorXd& y_new);

// From-scratch baseline: minimum-norm least squares over R^d.
Eigen::VectorXd independent_baseline(const Eigen::MatrixXd& X,
                                     const Eigen::VectorXd& y);

// Gaussian output-perturbation mechanism on the projected k-dimensional
// regression.  Per-sample cross terms y_j * (B^T x_j) are clipped to
// clip_bound in l2 before entering the normal equations, and noise of scale
// clip_bound * sqrt(2 ln(1.25/delta)) / (n * epsilon) is added to alpha_hat.
// Deterministic under seed.
TransferEstimate private_fit_new_client(const SubspaceEstimate& B_hat,
                                        const Eigen::MatrixXd& X_new,
                                        const Eigen::VectorXd& y_new,
                                        double epsilon, double delta,
                                        double clip_bound, std::uint64_t seed);

// Noise scale used by the Gaussian mechanism above; exposed for tests and
// for the privacy metadata on the estimate.
double gaussian_mechanism_scale(double epsilon, double delta,
                                double clip_bound, int n);

}  // namespace sharedrep

#endif  // SHAREDREP_TRANSFER_HPP_
