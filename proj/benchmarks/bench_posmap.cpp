// Copyright 2026 The posmap authors
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

#include <benchmark/benchmark.h>

#include "posmap/entangle.hpp"
#include "posmap/linalg.hpp"
#include "posmap/positivity.hpp"
#include "posmap/rng.hpp"
#include "posmap/tensor_norms.hpp"

using namespace posmap;

static void BM_HermEig(benchmark::State& state) {
  Rng rng(1);
  const CMatrix h = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(herm_eig(h));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_MinProductExpectation(benchmark::State& state) {
  Rng rng(2);
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const BipartiteOperator c(random_hermitian(rng, d * d), d, d);
  SearchParams params;
  params.restarts = 16;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_product_expectation(c, params));
  }
}
BENCHMARK(BM_MinProductExpectation)->Arg(2)->Arg(3)->Arg(4);

static void BM_PptCheck(benchmark::State& state) {
  const auto rho = make_random_state(3, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ppt_check(rho, 1e-9));
  }
}
BENCHMARK(BM_PptCheck);

static void BM_PiNorm(benchmark::State& state) {
  Rng rng(4);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const BipartiteOperator u(rng.ginibre(n * n, n * n), n, n);
  NormSearchParams params;
  params.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi_norm(u, params));
  }
}
BENCHMARK(BM_PiNorm)->Arg(2)->Arg(3);

static void BM_Decompose(benchmark::State& state) {
  Rng rng(5);
  const CMatrix gp = rng.ginibre(9, 9), gq = rng.ginibre(9, 9);
  const CMatrix c = gp * gp.adjoint() +
                    partial_transpose(BipartiteOperator(gq * gq.adjoint(), 3, 3), 2).mat;
  const BipartiteOperator target(c, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(target, 5000, 1e-8));
  }
}
BENCHMARK(BM_Decompose);

BENCHMARK_MAIN();
