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

#include "sharedrep/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace sharedrep {

// ---------------------------------------------------------------------------
// Covariance
// ---------------------------------------------------------------------------

Covariance Covariance::identity(int d) {
  if (d <= 0) throw DimensionError("Covariance::identity: d must be positive");
  Covariance c;
  c.kind_ = GammaKind::kIdentity;
  c.dim_ = d;
  return c;
}

Covariance Covariance::diagonal(Eigen::VectorXd diag) {
  if (diag.size() == 0)
    throw DimensionError("Covariance::diagonal: empty diagonal");
  if ((diag.array() <= 0.0).any())
    throw CovarianceError("Covariance::diagonal: entries must be positive");
  Covariance c;
  c.kind_ = GammaKind::kDiagonal;
  c.dim_ = static_cast<int>(diag.size());
  c.diag_ = std::move(diag);
  return c;
}

Covariance Covariance::dense(const Eigen::MatrixXd& spd) {
  if (spd.rows() != spd.cols() || spd.rows() == 0)
    throw DimensionError("Covariance::dense: matrix must be square");
  if ((spd - spd.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw CovarianceError("Covariance::dense: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spd);
  if (es.info() != Eigen::Success)
    throw NumericError("Covariance::dense: eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw CovarianceError("Covariance::dense: matrix not positive definite");
  Covariance c;
  c.kind_ = GammaKind::kDenseSpd;
  c.dim_ = static_cast<int>(spd.rows());
  c.dense_ = spd;
  c.dense_sqrt_ = es.operatorSqrt();
  return c;
}

Eigen::MatrixXd Covariance::matrix() const {
  switch (kind_) {
    case GammaKind::kIdentity:
      return Eigen::MatrixXd::Identity(dim_, dim_);
    case GammaKind::kDiagonal:
      return diag_.asDiagonal();
    case GammaKind::kDenseSpd:
      return dense_;
  }
  throw NumericError("Covariance::matrix: bad kind");
}

Eigen::MatrixXd Covariance::inverse() const {
  switch (kind_) {
    case GammaKind::kIdentity:
      return Eigen::MatrixXd::Identity(dim_, dim_);
    case GammaKind::kDiagonal:
      return diag_.cwiseInverse().asDiagonal();
    case GammaKind::kDenseSpd:
      return dense_.llt().solve(Eigen::MatrixXd::Identity(dim_, dim_));
  }
  throw NumericError("Covariance::inverse: bad kind");
}

Eigen::VectorXd Covariance::apply_sqrt(const Eigen::VectorXd& g) const {
  if (g.size() != dim_)
    throw DimensionError("Covariance::apply_sqrt: size mismatch");
  switch (kind_) {
    case GammaKind::kIdentity:
      return g;
    case GammaKind::kDiagonal:
      return diag_.cwiseSqrt().cwiseProduct(g);
    case GammaKind::kDenseSpd:
      return dense_sqrt_ * g;
  }
  throw NumericError("Covariance::apply_sqrt: bad kind");
}

Eigen::VectorXd Covariance::solve(const Eigen::VectorXd& v) const {
  if (v.size() != dim_) throw DimensionError("Covariance::solve: size mismatch");
  switch (kind_) {
    case GammaKind::kIdentity:
      return v;
    case GammaKind::kDiagonal:
      return v.cwiseQuotient(diag_);
    case GammaKind::kDenseSpd:
      return dense_.llt().solve(v);
  }
  throw NumericError("Covariance::solve: bad kind");
}

double Covariance::condition() const {
  switch (kind_) {
    case GammaKind::kIdentity:
      return 1.0;
    case GammaKind::kDiagonal:
      return diag_.maxCoeff() / diag_.minCoeff();
    case GammaKind::kDenseSpd: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_,
                                                        Eigen::EigenvaluesOnly);
      return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    }
  }
  throw NumericError("Covariance::condition: bad kind");
}

// ---------------------------------------------------------------------------
// GammaProfile / AlphaScheme / LinkSpec / PartitionScheme
// ---------------------------------------------------------------------------

GammaProfile GammaProfile::identity() { return GammaProfile{}; }

GammaProfile GammaProfile::diagonal(double lo, double hi, double cond_bound) {
  GammaProfile p;
  p.kind = GammaKind::kDiagonal;
  p.diag_lo = lo;
  p.diag_hi = hi;
  p.cond_bound = cond_bound;
  return p;
}

GammaProfile GammaProfile::dense_spd(double cond, double cond_bound) {
  GammaProfile p;
  p.kind = GammaKind::kDenseSpd;
  p.spd_cond = cond;
  p.cond_bound = cond_bound;
  return p;
}

std::string GammaProfile::describe() const {
  std::ostringstream os;
  switch (kind) {
    case GammaKind::kIdentity:
      os << "identity";
      break;
    case GammaKind::kDiagonal:
      os << "diagonal(" << diag_lo << "," << diag_hi << ")";
      break;
    case GammaKind::kDenseSpd:
      os << "spd(" << spd_cond << ")";
      break;
  }
  return os.str();
}

AlphaScheme AlphaScheme::gaussian(double scale, double bound) {
  AlphaScheme s;
  s.kind = Kind::kGaussian;
  s.scale = scale;
  s.bound = bound;
  return s;
}

AlphaScheme AlphaScheme::basis() {
  AlphaScheme s;
  s.kind = Kind::kBasis;
  return s;
}

AlphaScheme AlphaScheme::explicit_matrix(Eigen::MatrixXd alphas) {
  AlphaScheme s;
  s.kind = Kind::kExplicit;
  s.explicit_alphas = std::move(alphas);
  return s;
}

std::string AlphaScheme::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kGaussian:
      os << "gaussian(" << scale << "," << bound << ")";
      break;
    case Kind::kBasis:
      os << "basis";
      break;
    case Kind::kExplicit:
      os << "explicit(" << explicit_alphas.rows() << "x"
         << explicit_alphas.cols() << ")";
      break;
  }
  return os.str();
}

LinkSpec LinkSpec::linear() { return LinkSpec{}; }

LinkSpec LinkSpec::logistic() {
  LinkSpec s;
  s.kind = Kind::kLogistic;
  return s;
}

LinkSpec LinkSpec::relu_network() {
  LinkSpec s;
  s.kind = Kind::kReluNetwork;
  return s;
}

LinkSpec LinkSpec::relu_network(Eigen::VectorXd head) {
  LinkSpec s;
  s.kind = Kind::kReluNetwork;
  s.head_weights = std::move(head);
  return s;
}

LinkSpec LinkSpec::custom(std::function<double(const Eigen::VectorXd&)> h,
                          double lipschitz_bound) {
  if (lipschitz_bound <= 0.0)
    throw ConfigError("LinkSpec::custom: lipschitz_bound must be positive");
  LinkSpec s;
  s.kind = Kind::kCustomLipschitz;
  s.link = std::move(h);
  s.lipschitz_bound = lipschitz_bound;
  return s;
}

PartitionScheme PartitionScheme::equal(int n) {
  if (n < 1) throw ConfigError("PartitionScheme::equal: n must be >= 1");
  PartitionScheme s;
  s.kind = Kind::kEqual;
  s.equal_n = n;
  return s;
}

PartitionScheme PartitionScheme::uniform(int lo, int hi) {
  if (lo < 1 || hi < lo)
    throw ConfigError("PartitionScheme::uniform: need 1 <= lo <= hi");
  PartitionScheme s;
  s.kind = Kind::kUniform;
  s.uniform_lo = lo;
  s.uniform_hi = hi;
  return s;
}

PartitionScheme PartitionScheme::explicit_sizes_of(std::vector<int> sizes) {
  PartitionScheme s;
  s.kind = Kind::kExplicit;
  s.explicit_sizes = std::move(sizes);
  return s;
}

std::string PartitionScheme::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kEqual:
      os << "equal(" << equal_n << ")";
      break;
    case Kind::kUniform:
      os << "uniform(" << uniform_lo << "," << uniform_hi << ")";
      break;
    case Kind::kExplicit:
      os << "explicit(" << explicit_sizes.size() << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GroundTruth / FederatedDataset
// ---------------------------------------------------------------------------

Eigen::VectorXd GroundTruth::theta(int client) const {
  if (client < 0 || client >= M)
    throw DimensionError("GroundTruth::theta: client index out of range");
  return gammas[client].solve(B_star * alphas.col(client));
}

bool GroundTruth::all_gammas_identity() const {
  for (const auto& g : gammas)
    if (g.kind() != GammaKind::kIdentity) return false;
  return true;
}

void FederatedDataset::validate() const {
  if (clients.size() != partitions.size())
    throw DimensionError("FederatedDataset: clients/partitions size mismatch");
  long long total = 0;
  const int d = dim();
  for (std::size_t i = 0; i < clients.size(); ++i) {
    if (partitions[i] < 1)
      throw DimensionError("FederatedDataset: n_i must be >= 1");
    if (clients[i].X.rows() != partitions[i] ||
        clients[i].y.size() != partitions[i])
      throw DimensionError("FederatedDataset: client rows do not match n_i");
    if (clients[i].X.cols() != d)
      throw DimensionError("FederatedDataset: inconsistent covariate dim");
    total += partitions[i];
  }
  if (total != N) throw DimensionError("FederatedDataset: N != sum n_i");
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace {

// Thin-Q orthonormalization with a deterministic sign fix (diagonal of R
// made positive) so the result is unique given the input.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& A) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ() *
                      Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::MatrixXd R = qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

double log_uniform(RandomStream& rng, double lo, double hi) {
  return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
}

Covariance draw_covariance(const GammaProfile& profile, int d,
                           RandomStream& rng) {
  switch (profile.kind) {
    case GammaKind::kIdentity:
      return Covariance::identity(d);
    case GammaKind::kDiagonal: {
      Eigen::VectorXd diag(d);
      for (int j = 0; j < d; ++j)
        diag(j) = log_uniform(rng, profile.diag_lo, profile.diag_hi);
      return Covariance::diagonal(std::move(diag));
    }
    case GammaKind::kDenseSpd: {
      const double lo = 1.0 / std::sqrt(profile.spd_cond);
      const double hi = std::sqrt(profile.spd_cond);
      Eigen::VectorXd eigs(d);
      for (int j = 0; j < d; ++j) eigs(j) = log_uniform(rng, lo, hi);
      const Eigen::MatrixXd Q = orthonormalize(rng.normal_matrix(d, d));
      return Covariance::dense(Q * eigs.asDiagonal() * Q.transpose());
    }
  }
  throw NumericError("draw_covariance: bad kind");
}

Eigen::MatrixXd draw_alphas(const AlphaScheme& scheme, int k, int M,
                            RandomStream& rng) {
  switch (scheme.kind) {
    case AlphaScheme::Kind::kGaussian: {
      const double sd = scheme.scale / std::sqrt(static_cast<double>(k));
      Eigen::MatrixXd alphas(k, M);
      for (int i = 0; i < M; ++i) {
        Eigen::VectorXd a(k);
        do {
          for (int r = 0; r < k; ++r) a(r) = sd * rng.normal();
        } while (a.norm() > scheme.bound);
        alphas.col(i) = a;
      }
      return alphas;
    }
    case AlphaScheme::Kind::kBasis: {
      Eigen::MatrixXd alphas = Eigen::MatrixXd::Zero(k, M);
      for (int i = 0; i < M; ++i) alphas(i % k, i) = 1.0;
      return alphas;
    }
    case AlphaScheme::Kind::kExplicit: {
      if (scheme.explicit_alphas.rows() != k ||
          scheme.explicit_alphas.cols() != M)
        throw DimensionError("AlphaScheme: explicit matrix must be k x M");
      return scheme.explicit_alphas;
    }
  }
  throw NumericError("draw_alphas: bad kind");
}

}  // namespace

GroundTruth generate_ground_truth(int d, int k, int M,
                                  const GammaProfile& gamma_profile,
                                  const AlphaScheme& alpha_scheme,
                                  std::uint64_t seed) {
  if (k < 1 || k > d) throw DimensionError("generate_ground_truth: need 1 <= k <= d");
  if (M < k) throw DimensionError("generate_ground_truth: need M >= k");
  // Tolerance absorbs decimal round-off for ranges sitting exactly at the
  // bound, e.g. [1/sqrt(10), sqrt(10)] with cap 10.
  const double cond_cap = gamma_profile.cond_bound * (1.0 + 1e-9);
  if (gamma_profile.kind == GammaKind::kDiagonal) {
    if (gamma_profile.diag_lo <= 0.0 || gamma_profile.diag_hi < gamma_profile.diag_lo)
      throw ConfigError("generate_ground_truth: bad diagonal range");
    if (gamma_profile.diag_hi / gamma_profile.diag_lo > cond_cap)
      throw ConfigError(
          "generate_ground_truth: diagonal range violates the condition-number "
          "bound");
  }
  if (gamma_profile.kind == GammaKind::kDenseSpd &&
      gamma_profile.spd_cond > cond_cap)
    throw ConfigError(
        "generate_ground_truth: spd profile violates the condition-number bound");

  GroundTruth gt;
  gt.d = d;
  gt.k = k;
  gt.M = M;

  // Independent substreams per concern keep the draws stable if one part of
  // the recipe changes.
  RandomStream b_rng(seed, 0x42534152);   // B*
  RandomStream a_rng(seed, 0x414c5048);   // alphas
  gt.B_star = orthonormalize(b_rng.normal_matrix(d, k));
  gt.alphas = draw_alphas(alpha_scheme, k, M, a_rng);

  gt.gammas.reserve(M);
  for (int i = 0; i < M; ++i) {
    RandomStream g_rng(derive_seed(seed, 0x47414d4d, static_cast<std::uint64_t>(i)));
    gt.gammas.push_back(draw_covariance(gamma_profile, d, g_rng));
  }
  return gt;
}

std::vector<int> sample_partitions(const PartitionScheme& scheme, int M,
                                   std::uint64_t seed) {
  if (M < 1) throw DimensionError("sample_partitions: M must be >= 1");
  switch (scheme.kind) {
    case PartitionScheme::Kind::kEqual:
      return std::vector<int>(M, scheme.equal_n);
    case PartitionScheme::Kind::kUniform: {
      RandomStream rng(seed, 0x50415254);
      std::vector<int> n(M);
      for (int i = 0; i < M; ++i)
        n[i] = static_cast<int>(rng.uniform_int(scheme.uniform_lo, scheme.uniform_hi));
      return n;
    }
    case PartitionScheme::Kind::kExplicit: {
      if (static_cast<int>(scheme.explicit_sizes.size()) != M)
        throw DimensionError("sample_partitions: explicit vector has wrong length");
      for (int n : scheme.explicit_sizes)
        if (n < 1) throw DimensionError("sample_partitions: n_i must be >= 1");
      return scheme.explicit_sizes;
    }
  }
  throw NumericError("sample_partitions: bad kind");
}

namespace {

Eigen::VectorXd draw_covariate(const Covariance& gamma, CovariateFamily family,
                               RandomStream& rng) {
  Eigen::VectorXd g(gamma.dim());
  if (family == CovariateFamily::kGaussian) {
    for (int j = 0; j < gamma.dim(); ++j) g(j) = rng.normal();
  } else {
    for (int j = 0; j < gamma.dim(); ++j) g(j) = rng.rademacher();
  }
  return gamma.apply_sqrt(g);
}

}  // namespace

FederatedDataset sample_dataset(const GroundTruth& gt,
                                const std::vector<int>& partitions,
                                std::uint64_t seed) {
  if (static_cast<int>(partitions.size()) != gt.M)
    throw DimensionError("sample_dataset: partitions length must equal M");
  FederatedDataset ds;
  ds.partitions = partitions;
  ds.clients.resize(gt.M);
  ds.N = 0;
  for (int i = 0; i < gt.M; ++i) {
    const int n = partitions[i];
    if (n < 1) throw DimensionError("sample_dataset: n_i must be >= 1");
    ds.N += n;
    RandomStream rng(derive_seed(seed, 0x44415441, static_cast<std::uint64_t>(i)));
    const Eigen::VectorXd theta = gt.theta(i);
    ClientData& c = ds.clients[i];
    c.X.resize(n, gt.d);
    c.y.resize(n);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd x = draw_covariate(gt.gammas[i], gt.covariates, rng);
      c.X.row(j) = x.transpose();
      c.y(j) = x.dot(theta) + gt.noise_sigma * rng.normal();
    }
  }
  return ds;
}

FederatedDataset sample_nonlinear_dataset(const GroundTruth& gt,
                                          const LinkSpec& link,
                                          const std::vector<int>& partitions,
                                          std::uint64_t seed) {
  if (link.kind == LinkSpec::Kind::kLinear)
    return sample_dataset(gt, partitions, seed);
  if (!gt.all_gammas_identity())
    throw ConfigError(
        "sample_nonlinear_dataset: nonlinear links require identity "
        "covariances");
  if (static_cast<int>(partitions.size()) != gt.M)
    throw DimensionError("sample_nonlinear_dataset: partitions length must equal M");
  if (link.kind == LinkSpec::Kind::kCustomLipschitz && !link.link)
    throw ConfigError("sample_nonlinear_dataset: custom link missing callable");

  FederatedDataset ds;
  ds.partitions = partitions;
  ds.clients.resize(gt.M);
  ds.N = 0;
  for (int i = 0; i < gt.M; ++i) {
    const int n = partitions[i];
    if (n < 1) throw DimensionError("sample_nonlinear_dataset: n_i must be >= 1");
    ds.N += n;
    RandomStream rng(derive_seed(seed, 0x44415441, static_cast<std::uint64_t>(i)));
    const Eigen::VectorXd head =
        link.head_weights ? *link.head_weights : Eigen::VectorXd(gt.alphas.col(i));
    if (head.size() != gt.k)
      throw DimensionError("sample_nonlinear_dataset: head must have length k");
    ClientData& c = ds.clients[i];
    c.X.resize(n, gt.d);
    c.y.resize(n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd x(gt.d);
      for (int r = 0; r < gt.d; ++r) x(r) = rng.normal();
      c.X.row(j) = x.transpose();
      const Eigen::VectorXd u = gt.B_star.transpose() * x;
      switch (link.kind) {
        case LinkSpec::Kind::kLogistic: {
          const double p = 1.0 / (1.0 + std::exp(-u.dot(head)));
          c.y(j) = rng.uniform() < p ? 1.0 : 0.0;
          break;
        }
        case LinkSpec::Kind::kReluNetwork:
          c.y(j) = u.cwiseMax(0.0).dot(head) + gt.noise_sigma * rng.normal();
          break;
        case LinkSpec::Kind::kCustomLipschitz:
          c.y(j) = link.link(u) + gt.noise_sigma * rng.normal();
          break;
        default:
          throw NumericError("sample_nonlinear_dataset: bad kind");
      }
    }
  }
  return ds;
}

}  // namespace sharedrep
