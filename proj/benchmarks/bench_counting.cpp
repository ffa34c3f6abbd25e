#include <benchmark/benchmark.h>

#include "seqlimit/counting.hpp"
#include "seqlimit/random.hpp"

using namespace seqlimit;

namespace {

Word random_word(std::size_t n, std::uint64_t seed) {
    SeededStream s(seed, 0);
    std::string w(n, '0');
    for (auto& c : w) c = s.uniform_below(2) ? '1' : '0';
    return Word::parse(w);
}

}  // namespace

static void BM_SubsequenceCount(benchmark::State& state) {
    const Word w = random_word(static_cast<std::size_t>(state.range(0)), 1);
    const Word u = random_word(static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(subsequence_count(w, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SubsequenceCount)->ArgsProduct({{1000, 10000, 100000}, {3, 8}})->Complexity();

static void BM_DensityTable(benchmark::State& state) {
    const Word w = random_word(10000, 3);
    for (auto _ : state) benchmark::DoNotOptimize(density_table(w, static_cast<std::size_t>(state.range(0)), 1 << 12, 1));
}
BENCHMARK(BM_DensityTable)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
