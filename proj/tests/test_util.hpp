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

#ifndef SHAREDREP_TESTS_TEST_UTIL_HPP_
#define SHAREDREP_TESTS_TEST_UTIL_HPP_

#include <Eigen/Dense>

#include "sharedrep/random.hpp"

namespace testutil {

// Random matrix with orthonormal columns, via QR of a Gaussian draw.
inline Eigen::MatrixXd random_orthonormal(int d, int k, sharedrep::RandomStream& rng) {
  const Eigen::MatrixXd g = rng.normal_matrix(d, k);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
}

// Random k x k orthogonal matrix.
inline Eigen::MatrixXd random_rotation(int k, sharedrep::RandomStream& rng) {
  return random_orthonormal(k, k, rng);
}

// Spectral norm through a different code path (Jacobi SVD) than the library
// uses for the principal angle distance.
inline double spectral_norm_svd(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace testutil

#endif  // SHAREDREP_TESTS_TEST_UTIL_HPP_
