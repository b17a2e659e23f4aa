// Copyright 2026 The lsilab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "benchmark/benchmark.h"
#include "lsilab/transport_1d.hpp"
#include "lsilab/wasserstein.hpp"

namespace lsilab {
namespace {

void BM_BrenierMap(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  const LogDensity f = perturbed_quadratic(0.3, 0.05, 2.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(brenier_map_1d(f, {}, resolution));
}
BENCHMARK(BM_BrenierMap)->RangeMultiplier(2)->Range(1024, 8192)->Unit(benchmark::kMillisecond);

void BM_QuantileW2(benchmark::State& state) {
  const CdfTable mu = build_cdf_table(quadratic_family(0.5, 1), {});
  const CdfTable nu = build_cdf_table(quadratic_family(0.0, 1), {});
  const int count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(w2_quantile_1d(mu, nu, count));
}
BENCHMARK(BM_QuantileW2)->RangeMultiplier(10)->Range(1000, 100000);

// Annealed log-domain Sinkhorn between a rescaled Gaussian and the Gaussian
// on a tensor Gauss-Hermite grid.
void BM_Sinkhorn2D(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const QuadratureRule grid = gaussian_rule(order, 2);
  const DiscreteMeasure mu = discretize(quadratic_family(0.5, 2), grid);
  const DiscreteMeasure nu = discretize(quadratic_family(0.0, 2), grid);
  for (auto _ : state) benchmark::DoNotOptimize(w2_sinkhorn(mu, nu));
}
BENCHMARK(BM_Sinkhorn2D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lsilab
