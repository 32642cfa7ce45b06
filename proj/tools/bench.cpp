// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "metab/ia.hpp"
#include "metab/magnus.hpp"
#include "metab/verify.hpp"

using namespace metab;

static void BM_RhoIgSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rho_ig_probe_serial(4, st.range(0), 4, 20, 1));
}
static void BM_RhoIgParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(rho_ig_probe(4, st.range(0), 4, 20, 1));
}
BENCHMARK(BM_RhoIgSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RhoIgParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_PsiClosureSerial(benchmark::State& st) {
  auto set = psi_enumerate(2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(psi_closed(set));
}
static void BM_PsiClosureParallel(benchmark::State& st) {
  auto set = psi_enumerate(2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(psi_closed_parallel(set));
}
BENCHMARK(BM_PsiClosureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsiClosureParallel)->Unit(benchmark::kMillisecond);

static void BM_SuiteSerial(benchmark::State& st) {
  auto suite = builtin_suite();
  for (auto _ : st) benchmark::DoNotOptimize(run_suite_serial(suite, 2));
}
static void BM_SuiteParallel(benchmark::State& st) {
  auto suite = builtin_suite();
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(suite, 2));
}
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SuiteParallel)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
