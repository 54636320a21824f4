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

#include "sharedrep/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "sharedrep/error.hpp"

namespace sharedrep {

Eigen::MatrixXd diversity_matrix(const Eigen::MatrixXd& alphas,
                                 const std::vector<int>& partitions) {
  const int M = static_cast<int>(alphas.cols());
  if (static_cast<int>(partitions.size()) != M)
    throw DimensionError("diversity_matrix: partitions length must equal M");
  long long N = 0;
  for (int n : partitions) {
    if (n < 1) throw DimensionError("diversity_matrix: n_i must be >= 1");
    N += n;
  }
  const int k = static_cast<int>(alphas.rows());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < M; ++i)
    D.noalias() += partitions[i] * alphas.col(i) * alphas.col(i).transpose();
  D /= static_cast<double>(N);
  // Sums of symmetric rank-1 terms; symmetrize away rounding residue.
  D = 0.5 * (D + D.transpose()).eval();
  return D;
}

DiversitySpectrum spectrum(const Eigen::MatrixXd& D, double eps_rank,
                           double sym_tol) {
  if (D.rows() != D.cols() || D.rows() == 0)
    throw DimensionError("spectrum: D must be square");
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > sym_tol)
    throw DimensionError("spectrum: D not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (D + D.transpose()));
  if (es.info() != Eigen::Success)
    throw NumericError("spectrum: eigendecomposition failed");

  DiversitySpectrum s;
  s.eigenvalues = es.eigenvalues().reverse();  // descending
  s.lambda1 = s.eigenvalues(0);
  s.lambdak = s.eigenvalues(s.eigenvalues.size() - 1);
  s.trace = s.eigenvalues.sum();
  s.condition = s.lambdak > eps_rank
                    ? s.lambda1 / s.lambdak
                    : std::numeric_limits<double>::infinity();
  return s;
}

WellRepresentedCheck well_represented_check(const std::vector<int>& partitions,
                                            int k, double c) {
  if (partitions.empty())
    throw DimensionError("well_represented_check: empty partitions");
  if (k < 1) throw DimensionError("well_represented_check: k must be >= 1");
  if (c <= 0.0) throw ConfigError("well_represented_check: c must be positive");
  long long N = 0;
  int max_n = 0;
  for (int n : partitions) {
    if (n < 1) throw DimensionError("well_represented_check: n_i must be >= 1");
    N += n;
    max_n = std::max(max_n, n);
  }
  const double M = static_cast<double>(partitions.size());
  WellRepresentedCheck out;
  out.ratio = max_n / (static_cast<double>(N) / M);
  out.threshold = c * std::sqrt(M / k);
  out.satisfied = out.ratio <= out.threshold;
  return out;
}

}  // namespace sharedrep
