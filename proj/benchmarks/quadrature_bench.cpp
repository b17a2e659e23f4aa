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
#include "lsilab/functionals.hpp"
#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"

namespace lsilab {
namespace {

void BM_HermiteRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hermite_rule(order));
}
BENCHMARK(BM_HermiteRule)->RangeMultiplier(4)->Range(8, 512);

void BM_Functionals(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const QuadratureRule rule = gaussian_rule(dim == 1 ? 128 : 32, dim);
  const LogDensity f = perturbed_quadratic(0.3, 0.05, 2.0, dim);
  for (auto _ : state) benchmark::DoNotOptimize(compute_functionals(f, rule));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rule.size()));
}
BENCHMARK(BM_Functionals)->DenseRange(1, 3);

}  // namespace
}  // namespace lsilab
