#include <benchmark/benchmark.h>

#include "seqlimit/permutons.hpp"

using namespace seqlimit;

static void BM_DBoxGrid(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    SeededStream s(4, 0);
    const GridMeasure mu = random_grid_measure(m, 3, s);
    const GridMeasure nu = random_grid_measure(m, 3, s);
    for (auto _ : state) benchmark::DoNotOptimize(d_box_grid(mu, nu));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DBoxGrid)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_TGrid(benchmark::State& state) {
    SeededStream s(5, 0);
    const GridMeasure mu = random_grid_measure(static_cast<std::size_t>(state.range(0)), 2, s);
    const Permutation tau = Permutation::parse("2,4,1,3");
    for (auto _ : state) benchmark::DoNotOptimize(t_grid(tau, mu));
}
BENCHMARK(BM_TGrid)->Arg(4)->Arg(8)->Arg(12);

static void BM_PatternCountPerm(benchmark::State& state) {
    SeededStream s(6, 0);
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::vector<std::uint32_t> v(n);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = i + 1;
    for (std::uint32_t i = n; i > 1; --i) std::swap(v[i - 1], v[s.uniform_below(i)]);
    const Permutation sigma(v);
    const Permutation tau = Permutation::parse("1,3,2");
    for (auto _ : state) benchmark::DoNotOptimize(pattern_count_perm(sigma, tau));
}
BENCHMARK(BM_PatternCountPerm)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
