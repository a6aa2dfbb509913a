#include <benchmark/benchmark.h>

#include <omp.h>

#include "tpc/attacks.hpp"

namespace {

void BM_Sweep3x3Serial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tpc::sweep_all_3x3_serial());
}
BENCHMARK(BM_Sweep3x3Serial)->Unit(benchmark::kMillisecond);

void BM_Sweep3x3Parallel(benchmark::State& state) {
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tpc::sweep_all_3x3(workers));
}
BENCHMARK(BM_Sweep3x3Parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RealInputScanSerial(benchmark::State& state) {
    const auto f = tpc::builtin_function("counterexample");
    for (auto _ : state) benchmark::DoNotOptimize(tpc::scan_real_superpositions_serial(f, 0.5));
}
BENCHMARK(BM_RealInputScanSerial)->Unit(benchmark::kMillisecond);

void BM_RealInputScanParallel(benchmark::State& state) {
    const auto f = tpc::builtin_function("counterexample");
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tpc::scan_real_superpositions(f, 0.5));
}
BENCHMARK(BM_RealInputScanParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
