// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors
//
// Serial references against their OpenMP counterparts. Run with
// OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "moebal/oracle.hpp"
#include "moebal/simulator.hpp"

namespace moebal {
namespace {

LoadMatrix random_load(int devices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Count> cell(0, 200);
  LoadMatrix m(devices, devices);
  for (int d = 0; d < devices; ++d) {
    for (int e = 0; e < devices; ++e) m.at(d, e) = cell(rng);
  }
  return m;
}

template <auto Fn>
void BM_Oracle(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const auto load = random_load(D, 42);
  const ClusterSpec cluster{D, 1e10, 1e5};
  const ModelSpec model{D, 1, 1, 8192, 3.2e7, 3.2e7, 0.01, 0.02};
  std::size_t evaluated = 0;
  for (auto _ : state) {
    const auto r = Fn(load, 2, cluster, model, true, ExclusionSpace::Free);
    evaluated = r.evaluated;
    benchmark::DoNotOptimize(r.cost);
  }
  state.counters["placements"] = benchmark::Counter(static_cast<double>(evaluated) * state.iterations(),
                                                    benchmark::Counter::kIsRate);
}
BENCHMARK_TEMPLATE(BM_Oracle, brute_force_best_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Oracle, brute_force_best)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

struct SweepFixture {
  std::vector<std::vector<TraceRecord>> traces;
  std::vector<SweepJob> jobs;

  explicit SweepFixture(int num_traces) {
    const ClusterSpec cluster{8, 1e10, 1e5};
    const ModelSpec model{8, 4, 1, 8192, 3.2e7, 3.2e7, 0.010, 0.020};
    const PlannerConfig planner{1, 0.25, 1, false};
    for (int i = 0; i < num_traces; ++i) {
      GeneratorConfig g;
      g.seed = static_cast<std::uint64_t>(i + 1);
      traces.push_back(generate_trace(g, 50, model.num_blocks));
    }
    for (const auto& t : traces) {
      for (const char* name : {"vanilla", "top2", "prophet", "prophet-sched"}) {
        jobs.push_back({t, Policy::parse(name, planner), cluster, model, {}});
      }
    }
  }
};

template <auto Fn>
void BM_Sweep(benchmark::State& state) {
  const SweepFixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto reports = Fn(fx.jobs);
    benchmark::DoNotOptimize(reports.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.jobs.size()));
}
BENCHMARK_TEMPLATE(BM_Sweep, run_sweep_serial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Sweep, run_sweep)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace moebal

BENCHMARK_MAIN();
