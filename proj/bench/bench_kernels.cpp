// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bdc/algebra.hpp"
#include "bdc/constructions.hpp"
#include "bdc/enumeration.hpp"
#include "bdc/reconstruction.hpp"

using namespace bdc;

static void BM_MaxDetParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(max_det_exhaustive(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MaxDetParallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_MaxDetSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(max_det_exhaustive_serial(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MaxDetSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_EnumerateParallel(benchmark::State& state) {
  EnumerationOptions o;
  o.n = static_cast<int>(state.range(0));
  o.abs_det = o.n == 6 ? 6 : o.n - 1;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidate_supports(o));
}
BENCHMARK(BM_EnumerateParallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_EnumerateSerial(benchmark::State& state) {
  EnumerationOptions o;
  o.n = static_cast<int>(state.range(0));
  o.abs_det = o.n == 6 ? 6 : o.n - 1;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidate_supports_serial(o));
}
BENCHMARK(BM_EnumerateSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

// range(0) = jobs; 0 means the OpenMP default.
static void BM_AdmissibleFamily(benchmark::State& state) {
  const auto per3 = TargetPolynomial::permanent(3);
  const SupportMatrix b = support(grenet7x7());
  FamilyOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_admissible_family(b, per3, o));
}
BENCHMARK(BM_AdmissibleFamily)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
