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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sharedrep/diversity.hpp"
#include "sharedrep/error.hpp"
#include "sharedrep/random.hpp"

using namespace sharedrep;

TEST_CASE("orthonormal directions give D = I/k") {
  const int k = 3;
  Eigen::MatrixXd alphas = Eigen::MatrixXd::Identity(k, k);
  const Eigen::MatrixXd D = diversity_matrix(alphas, {5, 5, 5});
  CHECK((D - Eigen::MatrixXd::Identity(k, k) / k).cwiseAbs().maxCoeff() <= 1e-14);
  const DiversitySpectrum s = spectrum(D);
  CHECK(s.lambda1 == doctest::Approx(1.0 / k));
  CHECK(s.lambdak == doctest::Approx(1.0 / k));
  CHECK(s.condition == doctest::Approx(1.0));
}

TEST_CASE("repeated direction degenerates to rank one") {
  Eigen::MatrixXd alphas(2, 4);
  alphas << 1, 1, 1, 1, 0, 0, 0, 0;
  const Eigen::MatrixXd D = diversity_matrix(alphas, {3, 3, 3, 3});
  const DiversitySpectrum s = spectrum(D);
  CHECK(s.lambdak <= 1e-14);
  CHECK(std::isinf(s.condition));
}

TEST_CASE("diversity matrix matches a naive double-loop oracle") {
  RandomStream rng(404);
  const int k = 3, M = 20;
  const Eigen::MatrixXd alphas = rng.normal_matrix(k, M);
  std::vector<int> parts;
  for (int i = 0; i < M; ++i) parts.push_back(static_cast<int>(rng.uniform_int(1, 9)));

  const Eigen::MatrixXd D = diversity_matrix(alphas, parts);

  long long N = 0;
  for (int n : parts) N += n;
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int i = 0; i < M; ++i)
        oracle(a, b) += parts[i] * alphas(a, i) * alphas(b, i) / static_cast<double>(N);
  CHECK((D - oracle).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("2x2 eigenvalues match the quadratic-formula oracle") {
  RandomStream rng(405);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd A = rng.normal_matrix(2, 2);
    const Eigen::MatrixXd D = A * A.transpose() / 2.0;  // random SPD
    const DiversitySpectrum s = spectrum(D);
    const double tr = D(0, 0) + D(1, 1);
    const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    CHECK(s.lambda1 == doctest::Approx(tr / 2.0 + disc).epsilon(1e-10));
    CHECK(s.lambdak == doctest::Approx(tr / 2.0 - disc).epsilon(1e-10));
  }
}

TEST_CASE("trace identity (1/N) sum n_i |alpha_i|^2") {
  RandomStream rng(406);
  const int k = 4, M = 33;
  const Eigen::MatrixXd alphas = rng.normal_matrix(k, M);
  std::vector<int> parts;
  long long N = 0;
  for (int i = 0; i < M; ++i) {
    parts.push_back(static_cast<int>(rng.uniform_int(1, 30)));
    N += parts.back();
  }
  const DiversitySpectrum s = spectrum(diversity_matrix(alphas, parts));
  double expect = 0.0;
  for (int i = 0; i < M; ++i)
    expect += parts[i] * alphas.col(i).squaredNorm() / static_cast<double>(N);
  CHECK(std::abs(s.trace - expect) <= 1e-8);
}

TEST_CASE("scaling every partition by m leaves D unchanged") {
  RandomStream rng(407);
  const Eigen::MatrixXd alphas = rng.normal_matrix(3, 12);
  std::vector<int> parts, scaled;
  for (int i = 0; i < 12; ++i) {
    parts.push_back(static_cast<int>(rng.uniform_int(1, 7)));
    scaled.push_back(parts.back() * 5);
  }
  const Eigen::MatrixXd D1 = diversity_matrix(alphas, parts);
  const Eigen::MatrixXd D2 = diversity_matrix(alphas, scaled);
  CHECK((D1 - D2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("spectrum input validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(spectrum(bad), DimensionError);
  CHECK_THROWS_AS(diversity_matrix(Eigen::MatrixXd::Ones(2, 3), {1, 2}),
                  DimensionError);
}

TEST_CASE("well-representedness diagnostic") {
  CHECK_THROWS_AS(well_represented_check({}, 2), DimensionError);

  const auto equal = well_represented_check(std::vector<int>(100, 7), 4, 1.0);
  CHECK(equal.ratio == doctest::Approx(1.0));
  CHECK(equal.satisfied);

  // One giant client: n_1 = N - (M-1), the rest 1.
  std::vector<int> giant(50, 1);
  giant[0] = 1000;
  const auto unbalanced = well_represented_check(giant, 4, 1.0);
  CHECK(unbalanced.ratio > 10.0);
  CHECK_FALSE(unbalanced.satisfied);

  // Moderately uneven partitions at M = 1000, k = 10 stay comfortably under
  // the threshold c sqrt(M/k) = 10.
  RandomStream rng(408);
  std::vector<int> uniform;
  for (int i = 0; i < 1000; ++i)
    uniform.push_back(static_cast<int>(rng.uniform_int(2, 118)));
  const auto sampled = well_represented_check(uniform, 10, 1.0);
  CHECK(sampled.ratio <= 2.5);
  CHECK(sampled.threshold == doctest::Approx(10.0));
  CHECK(sampled.satisfied);
}

TEST_CASE("i.i.d. heads with enough clients are well conditioned") {
  // Empirical surrogate: alpha_i ~ N(0, I_k/k), equal partitions, M >= 20k;
  // the condition number stays below 3 in at least 95 of 100 seeded trials.
  const int k = 5, M = 150;
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomStream rng(1000 + trial);
    Eigen::MatrixXd alphas(k, M);
    const double sd = 1.0 / std::sqrt(static_cast<double>(k));
    for (int i = 0; i < M; ++i)
      for (int r = 0; r < k; ++r) alphas(r, i) = sd * rng.normal();
    const DiversitySpectrum s =
        spectrum(diversity_matrix(alphas, std::vector<int>(M, 20)));
    if (s.condition <= 3.0) ++good;
  }
  CHECK(good >= 95);
}
