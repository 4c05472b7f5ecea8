#include <benchmark/benchmark.h>

#include "seqode/suites.hpp"

namespace {

void run(benchmark::State& state, const char* name, bool parallel) {
  seqode::SuiteConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  cfg.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(seqode::run_suite(name, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_capphi_serial(benchmark::State& s) { run(s, "lemma4", false); }
void BM_capphi_parallel(benchmark::State& s) { run(s, "lemma4", true); }
void BM_hbound_serial(benchmark::State& s) { run(s, "hbound", false); }
void BM_hbound_parallel(benchmark::State& s) { run(s, "hbound", true); }
void BM_gincrement_serial(benchmark::State& s) { run(s, "gincrement", false); }
void BM_gincrement_parallel(benchmark::State& s) { run(s, "gincrement", true); }

}  // namespace

BENCHMARK(BM_capphi_serial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_capphi_parallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hbound_serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hbound_parallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gincrement_serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gincrement_parallel)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
