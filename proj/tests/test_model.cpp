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

#include "sharedrep/model.hpp"
#include "test_util.hpp"

using namespace sharedrep;

namespace {

GroundTruth simple_gt(int d, int k, int M, std::uint64_t seed,
                      const GammaProfile& gamma = GammaProfile::identity()) {
  return generate_ground_truth(d, k, M, gamma, AlphaScheme::gaussian(), seed);
}

}  // namespace

TEST_CASE("ground truth orthonormality against a hand-rolled Gram oracle") {
  const GroundTruth gt = simple_gt(8, 2, 50, 7);
  // Independent oracle: accumulate B^T B entry by entry without Eigen
  // products.
  double max_dev = 0.0;
  for (int a = 0; a < gt.k; ++a) {
    for (int b = 0; b < gt.k; ++b) {
      double dot = 0.0;
      for (int r = 0; r < gt.d; ++r) dot += gt.B_star(r, a) * gt.B_star(r, b);
      max_dev = std::max(max_dev, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(max_dev <= 1e-10);
}

TEST_CASE("k = d forces a full orthogonal matrix and theta_i = B e_i") {
  const GroundTruth gt =
      generate_ground_truth(2, 2, 2, GammaProfile::identity(),
                            AlphaScheme::basis(), 11);
  const Eigen::MatrixXd gram = gt.B_star * gt.B_star.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd theta = gt.theta(i);
    CHECK((theta - gt.B_star.col(i % 2)).norm() <= 1e-12);
  }
}

TEST_CASE("alpha norms respect the bound and gammas the condition cap") {
  const GroundTruth gt =
      generate_ground_truth(12, 3, 200, GammaProfile::diagonal(0.4, 2.5),
                            AlphaScheme::gaussian(), 3);
  for (int i = 0; i < gt.M; ++i) {
    CHECK(gt.alphas.col(i).norm() <= 4.0);
    CHECK(gt.gammas[i].condition() <= 10.0 + 1e-12);
  }
}

TEST_CASE("paper-scale generation succeeds") {
  const GroundTruth gt = simple_gt(120, 10, 1000, 5);
  CHECK(gt.B_star.rows() == 120);
  CHECK(gt.B_star.cols() == 10);
  CHECK(gt.alphas.cols() == 1000);
}

TEST_CASE("invalid dimensions and profiles are rejected") {
  CHECK_THROWS_AS(simple_gt(4, 5, 10, 1), DimensionError);
  CHECK_THROWS_AS(simple_gt(4, 2, 1, 1), DimensionError);
  CHECK_THROWS_AS(
      generate_ground_truth(4, 2, 10, GammaProfile::diagonal(0.01, 10.0),
                            AlphaScheme::gaussian(), 1),
      ConfigError);
  GammaProfile too_wild = GammaProfile::dense_spd(100.0);
  CHECK_THROWS_AS(
      generate_ground_truth(4, 2, 10, too_wild, AlphaScheme::gaussian(), 1),
      ConfigError);
}

TEST_CASE("determinism: identical seeds give bit-identical output") {
  const GroundTruth a = simple_gt(10, 3, 20, 99);
  const GroundTruth b = simple_gt(10, 3, 20, 99);
  CHECK(a.B_star == b.B_star);
  CHECK(a.alphas == b.alphas);

  const auto parts = sample_partitions(PartitionScheme::equal(6), 20, 99);
  const FederatedDataset da = sample_dataset(a, parts, 123);
  const FederatedDataset db = sample_dataset(b, parts, 123);
  for (int i = 0; i < 20; ++i) {
    CHECK(da.clients[i].X == db.clients[i].X);
    CHECK(da.clients[i].y == db.clients[i].y);
  }

  const GroundTruth c = simple_gt(10, 3, 20, 100);
  CHECK(a.B_star != c.B_star);
}

TEST_CASE("partition schemes") {
  const auto equal = sample_partitions(PartitionScheme::equal(60), 1000, 1);
  CHECK(equal.size() == 1000);
  for (int n : equal) CHECK(n == 60);

  const auto uniform = sample_partitions(PartitionScheme::uniform(2, 118), 1000, 1);
  int lo = 1000, hi = 0;
  for (int n : uniform) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  CHECK(lo >= 2);
  CHECK(hi <= 118);
  // The range should actually be explored at M = 1000.
  CHECK(hi - lo > 80);

  const auto expl =
      sample_partitions(PartitionScheme::explicit_sizes_of({3, 5, 7}), 3, 1);
  CHECK(expl == std::vector<int>{3, 5, 7});
  CHECK_THROWS_AS(
      sample_partitions(PartitionScheme::explicit_sizes_of({3, 5}), 3, 1),
      DimensionError);
}

TEST_CASE("noiseless linear data satisfies y = X B* alpha exactly") {
  GroundTruth gt = simple_gt(10, 3, 15, 21);
  gt.noise_sigma = 0.0;
  const auto parts = sample_partitions(PartitionScheme::equal(8), 15, 21);
  const FederatedDataset ds = sample_dataset(gt, parts, 77);
  ds.validate();
  for (int i = 0; i < gt.M; ++i) {
    const Eigen::VectorXd expected =
        ds.clients[i].X * (gt.B_star * gt.alphas.col(i));
    CHECK((ds.clients[i].y - expected).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("moment identity: mean of y x converges to B* alpha at 1/sqrt(n)") {
  GroundTruth gt = simple_gt(8, 2, 2, 31);
  const Eigen::VectorXd target = gt.B_star * gt.alphas.col(0);
  double prev_err = 1e300;
  for (int n : {1000, 10000, 100000}) {
    const FederatedDataset ds = sample_dataset(gt, {n, 2}, 13);
    const Eigen::VectorXd mean =
        ds.clients[0].X.transpose() * ds.clients[0].y / static_cast<double>(n);
    const double err = (mean - target).norm() / target.norm();
    if (n == 100000) CHECK(err <= 0.05);
    // Rate consistent with 1/sqrt(n): each 10x in n should shrink the error
    // by roughly sqrt(10); allow generous slack for Monte Carlo noise.
    CHECK(err <= prev_err);
    prev_err = err;
  }
}

TEST_CASE("moment identity holds under non-identity gamma") {
  GroundTruth gt = simple_gt(6, 2, 2, 41, GammaProfile::diagonal(0.5, 2.0));
  const int n = 200000;
  const FederatedDataset ds = sample_dataset(gt, {n, 2}, 17);
  const Eigen::VectorXd target = gt.B_star * gt.alphas.col(0);
  const Eigen::VectorXd mean =
      ds.clients[0].X.transpose() * ds.clients[0].y / static_cast<double>(n);
  CHECK((mean - target).norm() / target.norm() <= 0.05);
}

TEST_CASE("rademacher covariate hook keeps the covariance") {
  GroundTruth gt = simple_gt(5, 2, 2, 51, GammaProfile::diagonal(0.5, 2.0));
  gt.covariates = CovariateFamily::kRademacher;
  const int n = 100000;
  const FederatedDataset ds = sample_dataset(gt, {n, 2}, 19);
  const Eigen::MatrixXd cov =
      ds.clients[0].X.transpose() * ds.clients[0].X / static_cast<double>(n);
  const Eigen::MatrixXd gamma = gt.gammas[0].matrix();
  CHECK((cov - gamma).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("nonlinear sampling: logistic responses and relu noise floor") {
  GroundTruth gt = simple_gt(6, 2, 10, 61);
  const auto parts = sample_partitions(PartitionScheme::equal(500), 10, 61);

  const FederatedDataset logit =
      sample_nonlinear_dataset(gt, LinkSpec::logistic(), parts, 3);
  double ones = 0, total = 0;
  for (const auto& c : logit.clients) {
    for (Eigen::Index j = 0; j < c.y.size(); ++j) {
      CHECK((c.y(j) == 0.0 || c.y(j) == 1.0));
      ones += c.y(j);
      ++total;
    }
  }
  // Heads are symmetric around zero, so the overall response rate sits near
  // one half.
  CHECK(std::abs(ones / total - 0.5) < 0.05);

  // Zero head: y is pure noise.
  GroundTruth zero_head = gt;
  zero_head.alphas.setZero();
  const FederatedDataset relu = sample_nonlinear_dataset(
      zero_head, LinkSpec::relu_network(), parts, 5);
  double mean = 0, sq = 0, n = 0;
  for (const auto& c : relu.clients) {
    mean += c.y.sum();
    sq += c.y.squaredNorm();
    n += static_cast<double>(c.y.size());
  }
  mean /= n;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);  // sigma = 1
}

TEST_CASE("logistic with zero parameter is a fair coin") {
  GroundTruth gt = simple_gt(6, 2, 2, 71);
  gt.alphas.setZero();
  const FederatedDataset ds =
      sample_nonlinear_dataset(gt, LinkSpec::logistic(), {20000, 2}, 7);
  CHECK(std::abs(ds.clients[0].y.mean() - 0.5) < 0.02);
}

TEST_CASE("dense spd covariances: condition cap, sampling, and moments") {
  const GroundTruth gt = simple_gt(5, 2, 3, 61, GammaProfile::dense_spd(8.0));
  for (const auto& g : gt.gammas) {
    CHECK(g.kind() == GammaKind::kDenseSpd);
    CHECK(g.condition() <= 10.0 + 1e-9);
    // Gamma^{-1} Gamma = I through the solve path.
    const Eigen::MatrixXd m = g.matrix();
    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(5, 1.0, 2.0);
    CHECK((g.solve(m * v) - v).cwiseAbs().maxCoeff() <= 1e-10);
  }
  const int n = 100000;
  const FederatedDataset ds = sample_dataset(gt, {n, 2, 2}, 23);
  const Eigen::MatrixXd cov =
      ds.clients[0].X.transpose() * ds.clients[0].X / static_cast<double>(n);
  CHECK((cov - gt.gammas[0].matrix()).cwiseAbs().maxCoeff() <= 0.08);
}

TEST_CASE("nonlinear links reject non-identity gamma") {
  const GroundTruth gt = simple_gt(6, 2, 4, 81, GammaProfile::diagonal(0.5, 2.0));
  CHECK_THROWS_AS(
      sample_nonlinear_dataset(gt, LinkSpec::logistic(), {4, 4, 4, 4}, 1),
      ConfigError);
}

TEST_CASE("custom lipschitz link is sampled through the provided callable") {
  GroundTruth gt = simple_gt(5, 2, 2, 91);
  gt.noise_sigma = 0.0;
  const LinkSpec link = LinkSpec::custom(
      [](const Eigen::VectorXd& u) { return u.cwiseAbs().sum(); }, 1.0);
  const FederatedDataset ds = sample_nonlinear_dataset(gt, link, {50, 50}, 9);
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < ds.clients[i].y.size(); ++j) {
      const Eigen::VectorXd u =
          gt.B_star.transpose() * ds.clients[i].X.row(j).transpose();
      CHECK(ds.clients[i].y(j) == doctest::Approx(u.cwiseAbs().sum()));
    }
  }
}
