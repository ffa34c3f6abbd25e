#include <benchmark/benchmark.h>

#include "seqlimit/limits.hpp"

using namespace seqlimit;

namespace {

LimitFn staircase(std::size_t pieces) {
    std::vector<Rational> bps, vals;
    for (std::size_t i = 0; i <= pieces; ++i) bps.emplace_back(static_cast<long>(i), static_cast<long>(pieces));
    for (std::size_t i = 0; i < pieces; ++i) vals.emplace_back(static_cast<long>(i % 5), 4L);
    for (auto& q : bps) q.canonicalize();
    for (auto& q : vals) q.canonicalize();
    return LimitFn::step(bps, vals);
}

}  // namespace

static void BM_TDensity(benchmark::State& state) {
    const LimitFn f = staircase(static_cast<std::size_t>(state.range(0)));
    const Word u = Word::parse(std::string("0110").substr(0, static_cast<std::size_t>(state.range(1))));
    for (auto _ : state) benchmark::DoNotOptimize(t_density(u, f));
}
BENCHMARK(BM_TDensity)->ArgsProduct({{4, 16, 64}, {2, 4}});

static void BM_DBox(benchmark::State& state) {
    const LimitFn f = staircase(static_cast<std::size_t>(state.range(0)));
    const LimitFn g = staircase(static_cast<std::size_t>(state.range(0)) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(d_box(f, g));
}
BENCHMARK(BM_DBox)->RangeMultiplier(4)->Range(4, 256);

BENCHMARK_MAIN();
