// Serial vs OpenMP point sweeps over the same sample lists.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "austere4/families/families.hpp"
#include "austere4/geometry/immersion.hpp"
#include "austere4/sweep/sweep.hpp"

using namespace austere4;

namespace {

geometry::Immersion cone() { return families::helicoid_cone(1.0); }

void verify_sweep(benchmark::State& state, sweep::Execution exec, bool classify) {
  const geometry::Immersion imm = cone();
  const auto points = geometry::sample_domain(imm.domain(), {}, static_cast<int>(state.range(0)), 7);
  sweep::PointOptions options;
  options.classify = classify;
  options.check_ruling = 3;
  for (auto _ : state) {
    auto records = sweep::sweep_points(imm, points, options, exec);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = exec == sweep::Execution::kParallel ? omp_get_max_threads() : 1;
}

void BM_VerifySerial(benchmark::State& s) { verify_sweep(s, sweep::Execution::kSerial, false); }
void BM_VerifyParallel(benchmark::State& s) { verify_sweep(s, sweep::Execution::kParallel, false); }
void BM_ClassifySerial(benchmark::State& s) { verify_sweep(s, sweep::Execution::kSerial, true); }
void BM_ClassifyParallel(benchmark::State& s) { verify_sweep(s, sweep::Execution::kParallel, true); }

void conormal_sweep(benchmark::State& state, sweep::Execution exec) {
  const geometry::Immersion imm = cone();
  const auto samples = slag::random_conormal_samples(imm, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto records = sweep::sweep_conormal(imm, samples, slag::Convention::kPlus, exec);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ConormalSerial(benchmark::State& s) { conormal_sweep(s, sweep::Execution::kSerial); }
void BM_ConormalParallel(benchmark::State& s) { conormal_sweep(s, sweep::Execution::kParallel); }

}  // namespace

BENCHMARK(BM_VerifySerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifySerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConormalSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConormalParallel)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
