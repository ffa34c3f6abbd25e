#include <benchmark/benchmark.h>

#include "seqlimit/property_testing.hpp"

using namespace seqlimit;

static void BM_D1ToFamily(benchmark::State& state) {
    std::string w;
    while (w.size() < static_cast<std::size_t>(state.range(0))) w += "10";
    const Word word = Word::parse(w);
    const ForbiddenFamily f = ForbiddenFamily::parse("101,0110");
    for (auto _ : state) benchmark::DoNotOptimize(d1_to_family(word, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_D1ToFamily)->RangeMultiplier(8)->Range(64, 32768)->Complexity(benchmark::oN);

static void BM_RunTester(benchmark::State& state) {
    const Word w = Word::parse(std::string(5000, '0') + std::string(5000, '1'));
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    for (auto _ : state)
        benchmark::DoNotOptimize(run_tester(w, static_cast<std::size_t>(state.range(0)), 100, f, 7, 1, false));
}
BENCHMARK(BM_RunTester)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
