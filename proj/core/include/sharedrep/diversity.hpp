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

#ifndef SHAREDREP_DIVERSITY_HPP_
#define SHAREDREP_DIVERSITY_HPP_

#include <vector>

#include <Eigen/Core>

namespace sharedrep {

// Eigenvalue summary of the client diversity matrix D.
struct DiversitySpectrum {
  double lambda1 = 0.0;
  double lambdak = 0.0;
  // lambda1 / lambdak; +inf sentinel when lambdak <= eps_rank.
  double condition = 0.0;
  double trace = 0.0;
  Eigen::VectorXd eigenvalues;  // sorted descending
};

// D = (1/N) sum_i n_i alpha_i alpha_i^T, a k x k symmetric PSD matrix.
Eigen::MatrixXd diversity_matrix(const Eigen::MatrixXd& alphas,
                                 const std::vector<int>& partitions);

// Sorted spectrum of a symmetric D.  Inputs asymmetric beyond `sym_tol` are
// rejected.  lambdak at or below eps_rank yields the +inf condition sentinel.
DiversitySpectrum spectrum(const Eigen::MatrixXd& D, double eps_rank = 1e-12,
                           double sym_tol = 1e-8);

struct WellRepresentedCheck {
  bool satisfied = false;
  double ratio = 0.0;      // max_i n_i / (N/M)
  double threshold = 0.0;  // c * sqrt(M/k)
};

// Balance diagnostic: the partition is well represented when
// max_i n_i / mean(n) <= c * sqrt(M/k).
WellRepresentedCheck well_represented_check(const std::vector<int>& partitions,
                                            int k, double c = 1.0);

}  // namespace sharedrep

#endif  // SHAREDREP_DIVERSITY_HPP_
