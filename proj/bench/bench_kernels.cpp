#include <benchmark/benchmark.h>

#include "moduli/counting.hpp"
#include "moduli/forms.hpp"
#include "moduli/forms_kernel.hpp"
#include "moduli/reference.hpp"

namespace {

using namespace moduli;

void BM_EnumerateReference(benchmark::State& state) {
  const std::int64_t delta = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_reduced_forms(delta));
}

void BM_EnumerateKernelSerial(benchmark::State& state) {
  const FactoredDiscriminant d = validate_discriminant(-state.range(0));
  const kernel::FormEnumerator e(d);
  for (auto _ : state) {
    std::vector<QuadraticForm> out;
    e.collect(1, e.a_max(), out);
    benchmark::DoNotOptimize(out);
  }
}

void BM_EnumerateKernelParallel(benchmark::State& state) {
  const FactoredDiscriminant d = validate_discriminant(-state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel::enumerate_parallel(d, full_a_range(d)));
}

NeighborhoodQuery query_for(std::int64_t abs_delta) {
  return {validate_discriminant(-abs_delta), 0, 2, mpq_class(1, 100)};
}

void BM_CountReference(benchmark::State& state) {
  const auto q = query_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::cm_count(q.delta.delta, q.xi_re, q.xi_im, q.eps));
}

void BM_CountFull(benchmark::State& state) {
  const auto q = query_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cm_count_full(q));
}

void BM_CountRestricted(benchmark::State& state) {
  const auto q = query_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cm_count(q));
}

}  // namespace

BENCHMARK(BM_EnumerateReference)->Arg(99995)->Arg(999995)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateKernelSerial)->Arg(99995)->Arg(999995)->Arg(99999995)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateKernelParallel)->Arg(99995)->Arg(999995)->Arg(99999995)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountReference)->Arg(99995)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountFull)->Arg(99995)->Arg(9999995)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountRestricted)->Arg(99995)->Arg(9999995)->Arg(999999999995)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
