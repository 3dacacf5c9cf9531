#include <benchmark/benchmark.h>

#include "nullfoliate/suites.hpp"

namespace {

void run(benchmark::State& state, const char* suite, bool parallel) {
  nf::RunConfig cfg;
  cfg.m = static_cast<int>(state.range(0));
  cfg.cases = 32;
  cfg.suite = suite;
  for (auto _ : state) {
    nf::Report r = nf::run_suite(cfg, parallel);
    benchmark::DoNotOptimize(r.passed);
  }
}

void BM_PuritySerial(benchmark::State& s) { run(s, "purity", false); }
void BM_PurityParallel(benchmark::State& s) { run(s, "purity", true); }
void BM_IncidenceSerial(benchmark::State& s) { run(s, "incidence", false); }
void BM_IncidenceParallel(benchmark::State& s) { run(s, "incidence", true); }

}  // namespace

BENCHMARK(BM_PuritySerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PurityParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncidenceSerial)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncidenceParallel)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
