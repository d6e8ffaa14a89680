#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "mscvrp/rng.hpp"
#include "mscvrp/splitpr.hpp"

using namespace mscvrp;

static void BM_SplitTour(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(1, {1, 1, 2, 3, 1});
    Rng rng(1);
    std::vector<int> order(inst.customer_count());
    for (int c = 1; c <= inst.customer_count(); ++c) order[c - 1] = c;
    rng.shuffle(order);
    for (auto _ : state) {
        Solution sol = split_tour(inst, order);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_SplitTour);

static void BM_TourSwapDelta(benchmark::State& state) {
    const Instance inst = testing::generate_xml_style(2, {1, 2, 2, 4, 1});
    Rng rng(2);
    std::vector<int> order(inst.customer_count());
    for (int c = 1; c <= inst.customer_count(); ++c) order[c - 1] = c;
    rng.shuffle(order);
    int p = 0;
    for (auto _ : state) {
        const int q = (p * 37 + 11) % order.size();
        benchmark::DoNotOptimize(tour_swap_delta(inst, order, p % order.size(), q));
        p = (p + 1) % order.size();
    }
}
BENCHMARK(BM_TourSwapDelta);

BENCHMARK_MAIN();
