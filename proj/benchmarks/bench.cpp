// Copyright 2026 The rvse Authors
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


#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "rvse/autocorr.hpp"
#include "rvse/green.hpp"
#include "rvse/recursion.hpp"
#include "rvse/scaling.hpp"

namespace {

using namespace rvse;

OperatorLCU random_operator(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  static const char kLetters[] = "IXYZ";
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PauliTerm> t;
  for (std::size_t j = 0; j < terms; ++j) {
    std::string w(n, 'I');
    for (auto& c : w) c = kLetters[rng() % 4];
    t.push_back({u(rng), PauliWord::parse(w)});
  }
  return OperatorLCU(n, std::move(t));
}

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  return StateVector(n, std::move(a)).normalized();
}

void BM_ApplyLcu(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = random_operator(n, 64, rng);
  const auto psi = random_state(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_lcu(h, psi));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_ApplyLcu)->DenseRange(8, 14, 2);

void BM_RunRvse(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto h = resolve_scaling(random_operator(10, 32, rng), {}).op;
  const auto psi = random_state(10, rng);
  const auto K = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_rvse(h, psi, K));
}
BENCHMARK(BM_RunRvse)->Arg(100)->Arg(1000);

void BM_BesselSweep(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j_all(K, 100.0));
}
BENCHMARK(BM_BesselSweep)->Arg(150)->Arg(2000);

void BM_ResolventGrid(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto h = resolve_scaling(random_operator(8, 32, rng), {}).op;
  const auto recs = run_rvse(h, random_state(8, rng), 2000);
  const auto points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    for (std::size_t i = 0; i < points; ++i) {
      const double x = -0.95 + 1.9 * static_cast<double>(i) / static_cast<double>(points);
      benchmark::DoNotOptimize(resolvent_expectation(recs, cplx(x, 0.01)));
    }
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(BM_ResolventGrid)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
