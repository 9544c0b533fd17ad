/*
 * Copyright 2026 The codedcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "codedcache/bounds.hpp"
#include "codedcache/coloring.hpp"
#include "codedcache/conflict_graph.hpp"
#include "codedcache/delivery.hpp"
#include "codedcache/demand.hpp"
#include "codedcache/optimizer.hpp"
#include "codedcache/placement.hpp"
#include "codedcache/random.hpp"

namespace cc = codedcache;

namespace {

struct Instance {
  cc::SystemParams params;
  cc::CacheConfiguration cache;
  cc::PacketDemand demand;
};

Instance make_instance(std::size_t n, std::size_t m, double M, std::size_t B, double alpha) {
  cc::SystemParams params;
  params.n = n;
  params.m = m;
  params.M = M;
  params.B = B;
  cc::Rng rng(42);
  const auto q = cc::zipf_distribution(m, alpha);
  auto cache = cc::sample_cache_configuration(cc::uniform_distribution(m, M), params, rng);
  const auto d = cc::sample_demand_vector(q, n, rng);
  auto Q = cc::packet_demand(cache, d, params);
  return {params, std::move(cache), std::move(Q)};
}

void BM_BuildGraph(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 20, 4.0, 200, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(cc::build_conflict_graph(inst.cache, inst.demand));
}
BENCHMARK(BM_BuildGraph)->Arg(10)->Arg(40)->Arg(100);

void BM_Gcc1(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 20, 4.0, 200, 0.8);
  const auto g = cc::build_conflict_graph(inst.cache, inst.demand);
  for (auto _ : state) benchmark::DoNotOptimize(cc::gcc1(g));
  state.counters["vertices"] = static_cast<double>(g.size());
}
BENCHMARK(BM_Gcc1)->Arg(10)->Arg(40)->Arg(100);

void BM_Gcc(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 20, 4.0, 200, 0.8);
  const auto g = cc::build_conflict_graph(inst.cache, inst.demand);
  for (auto _ : state) benchmark::DoNotOptimize(cc::gcc(g));
}
BENCHMARK(BM_Gcc)->Arg(10)->Arg(40);

void BM_Encode(benchmark::State& state) {
  const auto inst = make_instance(20, 20, 4.0, 200, 0.8);
  const auto g = cc::build_conflict_graph(inst.cache, inst.demand);
  const auto c = cc::gcc(g);
  const cc::Library lib(20, 200, cc::kDefaultPacketBytes, 7);
  for (auto _ : state) benchmark::DoNotOptimize(cc::encode(c, g, lib));
}
BENCHMARK(BM_Encode);

void BM_Psi(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto q = cc::zipf_distribution(m, 1.6);
  const auto p = cc::rlfu_distribution(m, 20.0, m / 2);
  for (auto _ : state) benchmark::DoNotOptimize(cc::psi(q, p, 20.0, 500));
}
BENCHMARK(BM_Psi)->Arg(100)->Arg(500);

void BM_RateLowerBound(benchmark::State& state) {
  const auto q = cc::zipf_distribution(static_cast<std::size_t>(state.range(0)), 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(cc::rate_lower_bound(q, 10.0, 50));
}
BENCHMARK(BM_RateLowerBound)->Arg(50)->Arg(200);

void BM_OptimizeMtilde(benchmark::State& state) {
  const auto q = cc::zipf_distribution(500, 1.6);
  for (auto _ : state) benchmark::DoNotOptimize(cc::optimize_mtilde(q, 20.0, 500));
}
BENCHMARK(BM_OptimizeMtilde);

}  // namespace

BENCHMARK_MAIN();
