#include <algorithm>

#include <benchmark/benchmark.h>

#include <omp.h>

#include "divlab/inequalities.hpp"
#include "divlab/kernels.hpp"
#include "divlab/measures.hpp"

using namespace divlab;

namespace {

inequalities::SweepConfig small_sweep() {
  inequalities::SweepConfig cfg;
  cfg.t_min = 2.0;
  cfg.t_max = 2.6;
  cfg.dt = 0.05;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = small_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(inequalities::sweep_serial(cfg));
}

void BM_SweepParallel(benchmark::State& state) {
  auto cfg = small_sweep();
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(inequalities::sweep(cfg));
}

void BM_PObjectiveKernel(benchmark::State& state) {
  const qmat::BlochVector a{0.9, 0.4, 1.0}, b{0.7, 2.1, 4.0};
  const kernels::Vec3 va = kernels::to_cartesian(a), vb = kernels::to_cartesian(b);
  double G1 = 0.31, G2 = 0.29;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G1);
    benchmark::DoNotOptimize(
        kernels::distance(kernels::damp(G2, va), kernels::damp(G2, vb)) -
        kernels::distance(kernels::damp(G1, va), kernels::damp(G1, vb)));
  }
}

void BM_PObjectiveReference(benchmark::State& state) {
  const qmat::BlochVector a{0.9, 0.4, 1.0}, b{0.7, 2.1, 4.0};
  double G1 = 0.31, G2 = 0.29;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G1);
    benchmark::DoNotOptimize(measures::reference::p_objective(G1, G2, a, b));
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(std::max(2, omp_get_max_threads()))->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PObjectiveKernel);
BENCHMARK(BM_PObjectiveReference);

BENCHMARK_MAIN();
