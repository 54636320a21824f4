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

#include "sharedrep/error.hpp"
#include "sharedrep/rate.hpp"
#include "sharedrep/transfer.hpp"
#include "test_util.hpp"

using namespace sharedrep;

namespace {

SubspaceEstimate wrap(const Eigen::MatrixXd& basis) {
  SubspaceEstimate est;
  est.basis = basis;
  est.source = "test";
  return est;
}

}  // namespace

TEST_CASE("noiseless transfer recovers the head exactly") {
  RandomStream rng(31);
  const Eigen::MatrixXd B = testutil::random_orthonormal(10, 3, rng);
  const Eigen::VectorXd alpha = rng.normal_vector(3);
  const Eigen::MatrixXd X = rng.normal_matrix(12, 10);
  const Eigen::VectorXd y = X * B * alpha;
  const TransferEstimate fit = fit_new_client(wrap(B), X, y);
  CHECK((fit.alpha_hat - alpha).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((fit.theta_hat - B * alpha).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((fit.theta_hat - B * fit.alpha_hat).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_FALSE(fit.underdetermined);
}

TEST_CASE("zero responses yield a zero head") {
  RandomStream rng(32);
  const Eigen::MatrixXd B = testutil::random_orthonormal(8, 2, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(6, 8);
  const TransferEstimate fit = fit_new_client(wrap(B), X, Eigen::VectorXd::Zero(6));
  CHECK(fit.alpha_hat.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("underdetermined projected design is flagged, min-norm returned") {
  RandomStream rng(33);
  const Eigen::MatrixXd B = testutil::random_orthonormal(10, 4, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(2, 10);
  const Eigen::VectorXd y = rng.normal_vector(2);
  const TransferEstimate fit = fit_new_client(wrap(B), X, y);
  CHECK(fit.underdetermined);
  // The projected design interpolates in the underdetermined regime.
  CHECK(((X * B) * fit.alpha_hat - y).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("independent baseline: exact in the overdetermined noiseless case") {
  RandomStream rng(34);
  const Eigen::VectorXd theta = rng.normal_vector(7);
  const Eigen::MatrixXd X = rng.normal_matrix(30, 7);
  const Eigen::VectorXd theta_hat = independent_baseline(X, X * theta);
  CHECK((theta_hat - theta).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("independent baseline: min-norm interpolation when n < d") {
  RandomStream rng(35);
  const Eigen::MatrixXd X = rng.normal_matrix(5, 12);
  const Eigen::VectorXd y = rng.normal_vector(5);
  const Eigen::VectorXd theta_hat = independent_baseline(X, y);
  CHECK((X * theta_hat - y).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("transfer beats the baseline when the representation is accurate") {
  RandomStream rng(36);
  const int d = 40, k = 5, n = 20;
  const Eigen::MatrixXd B = testutil::random_orthonormal(d, k, rng);
  double transfer_err = 0.0, independent_err = 0.0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd alpha = rng.normal_vector(k) / std::sqrt(double(k));
    const Eigen::VectorXd theta = B * alpha;
    const Eigen::MatrixXd X = rng.normal_matrix(n, d);
    const Eigen::VectorXd y = X * theta + rng.normal_vector(n);
    transfer_err += (fit_new_client(wrap(B), X, y).theta_hat - theta).norm();
    independent_err += (independent_baseline(X, y) - theta).norm();
  }
  CHECK(transfer_err / trials < independent_err / trials);
}

TEST_CASE("privacy: vanishing noise at huge epsilon") {
  RandomStream rng(37);
  const Eigen::MatrixXd B = testutil::random_orthonormal(9, 2, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(50, 9);
  const Eigen::VectorXd y = X * B * rng.normal_vector(2) + 0.1 * rng.normal_vector(50);
  const TransferEstimate plain = fit_new_client(wrap(B), X, y);
  // Clip far above the data range so only the noise differs.
  const TransferEstimate priv =
      private_fit_new_client(wrap(B), X, y, 1e6, 1e-5, 1e4, 7);
  CHECK((priv.alpha_hat - plain.alpha_hat).norm() <= 1e-3);
  CHECK(priv.privacy.has_value());
}

TEST_CASE("privacy: bit-identical under a fixed seed") {
  RandomStream rng(38);
  const Eigen::MatrixXd B = testutil::random_orthonormal(9, 3, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(40, 9);
  const Eigen::VectorXd y = rng.normal_vector(40);
  const TransferEstimate a =
      private_fit_new_client(wrap(B), X, y, 1.0, 1e-5, 1.0, 12345);
  const TransferEstimate b =
      private_fit_new_client(wrap(B), X, y, 1.0, 1e-5, 1.0, 12345);
  CHECK(a.alpha_hat == b.alpha_hat);
  const TransferEstimate c =
      private_fit_new_client(wrap(B), X, y, 1.0, 1e-5, 1.0, 54321);
  CHECK(a.alpha_hat != c.alpha_hat);
}

TEST_CASE("privacy: noise scale matches the closed form") {
  // Independent arithmetic for clip=1, n=100, eps=1, delta=1e-5.
  const double oracle = std::sqrt(2.0 * std::log(1.25e5)) / 100.0;
  CHECK(gaussian_mechanism_scale(1.0, 1e-5, 1.0, 100) ==
        doctest::Approx(oracle).epsilon(1e-12));

  RandomStream rng(39);
  const Eigen::MatrixXd B = testutil::random_orthonormal(6, 2, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(100, 6);
  const Eigen::VectorXd y = rng.normal_vector(100);
  const TransferEstimate fit =
      private_fit_new_client(wrap(B), X, y, 1.0, 1e-5, 1.0, 5);
  CHECK(fit.privacy->noise_scale == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("privacy: invalid parameters are rejected") {
  RandomStream rng(40);
  const Eigen::MatrixXd B = testutil::random_orthonormal(6, 2, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(10, 6);
  const Eigen::VectorXd y = rng.normal_vector(10);
  CHECK_THROWS_AS(private_fit_new_client(wrap(B), X, y, -1.0, 1e-5, 1.0, 1),
                  ConfigError);
  CHECK_THROWS_AS(private_fit_new_client(wrap(B), X, y, 1.0, 2.0, 1.0, 1),
                  ConfigError);
  CHECK_THROWS_AS(private_fit_new_client(wrap(B), X, y, 1.0, 1e-5, 0.0, 1),
                  ConfigError);
}

TEST_CASE("privacy noise lives in k dimensions only") {
  RandomStream rng(41);
  const Eigen::MatrixXd B = testutil::random_orthonormal(12, 3, rng);
  const Eigen::MatrixXd X = rng.normal_matrix(60, 12);
  const Eigen::VectorXd y = rng.normal_vector(60);
  const TransferEstimate plain = fit_new_client(wrap(B), X, y);
  const TransferEstimate priv =
      private_fit_new_client(wrap(B), X, y, 0.5, 1e-5, 1e4, 99);
  const Eigen::VectorXd diff = priv.theta_hat - plain.theta_hat;
  // The perturbation stays inside col(B).
  const Eigen::VectorXd residual = diff - B * (B.transpose() * diff);
  CHECK(residual.norm() <= 1e-10 * std::max(1.0, diff.norm()));
}

TEST_CASE("transfer error grows with subspace distance along a geodesic") {
  RandomStream rng(42);
  const int d = 24, k = 3, n = 60;
  const Eigen::MatrixXd B = testutil::random_orthonormal(d, k, rng);
  // Orthonormal direction with W^T B = 0 gives B(t) = B cos t + W sin t.
  Eigen::MatrixXd raw = rng.normal_matrix(d, k);
  raw -= B * (B.transpose() * raw);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  const Eigen::MatrixXd W = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);

  const std::vector<double> ts = {0.0, 0.2, 0.4, 0.8};
  std::vector<double> med;
  for (double t : ts) {
    const Eigen::MatrixXd Bt = std::cos(t) * B + std::sin(t) * W;
    std::vector<double> errs;
    for (int trial = 0; trial < 40; ++trial) {
      RandomStream drng(derive_seed(4242, trial));
      const Eigen::VectorXd alpha = drng.normal_vector(k) / std::sqrt(double(k));
      const Eigen::VectorXd theta = B * alpha;
      const Eigen::MatrixXd X = drng.normal_matrix(n, d);
      const Eigen::VectorXd y = X * theta + 0.5 * drng.normal_vector(n);
      errs.push_back((fit_new_client(wrap(Bt), X, y).theta_hat - theta).norm());
    }
    med.push_back(median(errs));
  }
  for (std::size_t i = 1; i < med.size(); ++i) CHECK(med[i] >= med[i - 1]);
}
