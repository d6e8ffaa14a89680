#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "mscvrp/construction.hpp"

using namespace mscvrp;

static void BM_ClarkeWright(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(5, {1, 1, 4, 3, 1});
    for (auto _ : state) {
        Solution sol = clarke_wright(inst, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_ClarkeWright)->Arg(10)->Arg(100);

static void BM_InitialPool(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(6, {2, 1, 2, 2, 1});
    const Params params = Params::for_instance(inst);
    Rng rng(3);
    for (auto _ : state) {
        InitialPool pool = generate_initial_pool(inst, params, rng);
        benchmark::DoNotOptimize(pool);
    }
}
BENCHMARK(BM_InitialPool);

static void BM_ProximityDistance(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(7, {1, 3, 2, 3, 1});
    Rng rng(4);
    const Solution a = clarke_wright(inst, 100);
    Rng rng_b(5);
    Solution b = a;
    for (auto _ : state) {
        benchmark::DoNotOptimize(proximity(inst, a, b));
    }
}
BENCHMARK(BM_ProximityDistance);
