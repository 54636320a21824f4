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

#include <benchmark/benchmark.h>

#include "sharedrep/estimators.hpp"
#include "sharedrep/model.hpp"
#include "sharedrep/subspace.hpp"

namespace {

using namespace sharedrep;

FederatedDataset desk_dataset(int d, int k, int M, int n) {
  const GroundTruth gt = generate_ground_truth(
      d, k, M, GammaProfile::identity(), AlphaScheme::gaussian(), 17);
  return sample_dataset(gt, std::vector<int>(M, n), 23);
}

void BM_SampleDataset(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const GroundTruth gt = generate_ground_truth(
      40, 5, M, GammaProfile::identity(), AlphaScheme::gaussian(), 17);
  const std::vector<int> parts(M, 20);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_dataset(gt, parts, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(M) * 20);
}
BENCHMARK(BM_SampleDataset)->Arg(100)->Arg(300);

void BM_EstimatorReplica(benchmark::State& state) {
  const FederatedDataset ds = desk_dataset(40, 5, static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimator_replica(ds, 5));
  }
}
BENCHMARK(BM_EstimatorReplica)->Arg(100)->Arg(300)->Arg(1000);

void BM_EstimatorMultigroup(benchmark::State& state) {
  const FederatedDataset ds = desk_dataset(40, 5, 300, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimator_multigroup(ds, 5, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EstimatorMultigroup)->Arg(2)->Arg(5)->Arg(10);

void BM_EstimatorMom(benchmark::State& state) {
  const FederatedDataset ds = desk_dataset(40, 5, static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimator_mom(ds, 5));
  }
}
BENCHMARK(BM_EstimatorMom)->Arg(100)->Arg(300);

void BM_EstimatorPairwise(benchmark::State& state) {
  const FederatedDataset ds = desk_dataset(40, 5, static_cast<int>(state.range(0)), 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimator_pairwise(ds, 5));
  }
}
BENCHMARK(BM_EstimatorPairwise)->Arg(100)->Arg(300);

void BM_PrincipalAngleDistance(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GroundTruth a = generate_ground_truth(
      d, 5, 5, GammaProfile::identity(), AlphaScheme::gaussian(), 31);
  const GroundTruth b = generate_ground_truth(
      d, 5, 5, GammaProfile::identity(), AlphaScheme::gaussian(), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_angle_distance(a.B_star, b.B_star));
  }
}
BENCHMARK(BM_PrincipalAngleDistance)->Arg(40)->Arg(120)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
