#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "mscvrp/construction.hpp"
#include "mscvrp/search.hpp"

using namespace mscvrp;

static void BM_LocalSearchPass(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(3, {1, 1, 2, 3, 1});
    const Params params = Params::for_instance(inst);
    Rng rng(1);
    const Solution base = clarke_wright(inst, params.savings_neighbor_cap);
    for (auto _ : state) {
        Solution sol = base;
        SearchEngine engine(inst, params, rng);
        Incumbent incumbent;
        incumbent.offer(sol);
        engine.destroy_repair(sol, incumbent, RepairStrategy::kFull);
        engine.local_search_improvement(sol, incumbent);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_LocalSearchPass);

static void BM_OperatorExecution(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(4, {1, 2, 2, 3, 1});
    const Params params = Params::for_instance(inst);
    Rng rng(2);
    const Solution base = clarke_wright(inst, params.savings_neighbor_cap);
    for (auto _ : state) {
        Solution sol = base;
        SearchEngine engine(inst, params, rng);
        for (int c = 1; c <= 50; ++c) engine.cache().push(c);
        Incumbent incumbent;
        incumbent.offer(sol);
        engine.execute_operator(MoveKind::kInterRelocate, sol, incumbent);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_OperatorExecution);
