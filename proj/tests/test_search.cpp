#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "mscvrp/search.hpp"
#include "oracles.hpp"

using namespace mscvrp;

TEST_CASE("strategy escalation follows the regeneration count") {
    CHECK(select_strategy(RouteSizeClass::kShort, 0, false) == RepairStrategy::kFull);
    CHECK(select_strategy(RouteSizeClass::kShort, 2, false) == RepairStrategy::kFull);
    CHECK(select_strategy(RouteSizeClass::kShort, 3, false) == RepairStrategy::kFullGranular);
    CHECK(select_strategy(RouteSizeClass::kShort, 4, false) == RepairStrategy::kGranular);
    CHECK(select_strategy(RouteSizeClass::kLong, 1, false) == RepairStrategy::kFull);
    CHECK(select_strategy(RouteSizeClass::kLong, 2, false) == RepairStrategy::kGranular);
    CHECK(select_strategy(RouteSizeClass::kShort, 9, true) == RepairStrategy::kFull);
}

TEST_CASE("tabu list is a bounded FIFO over unordered pairs") {
    TabuList tabu(3);
    tabu.insert(1, 2);
    tabu.insert(4, 3);
    CHECK(tabu.contains(2, 1));
    CHECK(tabu.contains(3, 4));
    CHECK_FALSE(tabu.contains(1, 3));
    tabu.insert(5, 6);
    tabu.insert(7, 8);  // evicts (1,2)
    CHECK(tabu.size() == 3);
    CHECK_FALSE(tabu.contains(1, 2));
    CHECK(tabu.contains(3, 4));
}

TEST_CASE("vertex cache keeps recent entries within its bound") {
    VertexCache cache(3);
    cache.push(1);
    cache.push(2);
    cache.push(3);
    cache.push(1);  // refresh, no growth
    CHECK(cache.size() == 3);
    CHECK(cache.entries().back() == 1);
    cache.push(4);  // evicts the oldest (2)
    CHECK(cache.size() == 3);
    CHECK(std::find(cache.entries().begin(), cache.entries().end(), 2) == cache.entries().end());
}

TEST_CASE("granular size grows on stagnation and resets on a new best") {
    GranularState g(5, 5, 25);
    CHECK(g.current() == 5);
    for (int i = 0; i < 10; ++i) g.on_stagnation();
    CHECK(g.current() == 25);
    g.on_new_best();
    CHECK(g.current() == 5);
}

TEST_CASE("relocating next to its own predecessor or successor is free") {
    Rng rng(41);
    const Instance inst = testing::random_instance(rng, 10, 50, 4, 40);
    const Solution sol = Solution::from_routes(inst, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
    NodeIndex index;
    index.rebuild(sol, inst.dimension());

    Move after_prev{MoveKind::kIntraRelocate, 5, 4, /*after=*/true};
    CHECK(move_delta(inst, sol, index, after_prev) == 0);
    Move before_next{MoveKind::kIntraRelocate, 5, 6, /*after=*/false};
    CHECK(move_delta(inst, sol, index, before_next) == 0);
}

TEST_CASE("swapping mirrored equal-demand customers is free") {
    // customers 2 and 4 mirror each other across the x axis and their route
    // neighbors sit on the axis, so exchanging them moves no length at all
    const Instance inst =
        Instance::create("mirror", {0, 10, 20, 30, 20}, {0, 0, 5, 0, -5}, {0, 2, 2, 2, 2}, 5);
    const Solution sol = Solution::from_routes(inst, {{1, 2}, {3, 4}});
    NodeIndex index;
    index.rebuild(sol, inst.dimension());
    CHECK(move_delta(inst, sol, index, Move{MoveKind::kInterSwap, 2, 4}) == 0);
    CHECK(move_delta(inst, sol, index, Move{MoveKind::kInterSwap, 4, 2}) == 0);
}

TEST_CASE("move deltas match full recomputation for every kind") {
    Rng rng(7);
    for (MoveKind kind : moves_for_level(0)) {
        testing::MoveCheckStats total;
        for (int round = 0; round < 6 && total.verified < 30; ++round) {
            const Instance inst = testing::random_instance(rng, 12 + rng.int_below(30), 100, 9, 30);
            const Solution sol = testing::random_feasible_solution(inst, rng);
            const auto stats = testing::verify_random_moves(inst, sol, kind, rng, 30 - total.verified, 4000);
            total.verified += stats.verified;
            total.mismatches += stats.mismatches;
            total.infeasible += stats.infeasible;
        }
        CAPTURE(static_cast<int>(kind));
        CHECK(total.mismatches == 0);
        CHECK(total.infeasible == 0);
        CHECK(total.verified >= 30);
    }
    for (MoveKind kind : moves_for_level(1)) {
        testing::MoveCheckStats total;
        for (int round = 0; round < 40 && total.verified < 20; ++round) {
            // tight capacity makes overloading first stages common
            const Instance inst = testing::random_instance(rng, 16 + rng.int_below(20), 100, 9, 14);
            const Solution sol = testing::random_feasible_solution(inst, rng);
            const auto stats = testing::verify_random_moves(inst, sol, kind, rng, 20 - total.verified, 4000);
            total.verified += stats.verified;
            total.mismatches += stats.mismatches;
            total.infeasible += stats.infeasible;
        }
        CAPTURE(static_cast<int>(kind));
        CHECK(total.mismatches == 0);
        CHECK(total.infeasible == 0);
        CHECK(total.verified >= 20);
    }
}

TEST_CASE("local search uncrosses a crossing route") {
    // route 1-2-3-4 has crossing edges; the optimal single-route tour is known
    const Instance inst =
        Instance::create("cross", {0, 0, 10, 10, 0}, {0, 10, 20, 10, 20}, {0, 1, 1, 1, 1}, 10);
    Solution sol = Solution::from_routes(inst, {{1, 2, 3, 4}});
    const long long initial = sol.cost();

    // brute-force best single-route tour
    std::vector<int> perm{1, 2, 3, 4};
    long long best_tour = initial;
    std::sort(perm.begin(), perm.end());
    do {
        best_tour = std::min(best_tour, Solution::route_cost(inst, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    Params params = Params::for_instance(inst);
    Rng rng(3);
    SearchEngine engine(inst, params, rng);
    for (int c = 1; c <= 4; ++c) engine.cache().push(c);
    Incumbent incumbent;
    incumbent.offer(sol);
    engine.local_search_improvement(sol, incumbent);

    CHECK(sol.cost() < initial);
    CHECK(sol.cost() == best_tour);
    CHECK(sol.check_feasible(inst).feasible);
}

TEST_CASE("an operator execution with an empty cache changes nothing") {
    Rng rng(11);
    const Instance inst = testing::random_instance(rng, 15, 80, 6, 20);
    Solution sol = testing::random_feasible_solution(inst, rng);
    const std::string before = sol.serialize_sol();

    Params params = Params::for_instance(inst);
    SearchEngine engine(inst, params, rng);
    Incumbent incumbent;
    incumbent.offer(sol);
    for (MoveKind kind : moves_for_level(0)) CHECK_FALSE(engine.execute_operator(kind, sol, incumbent));
    CHECK(sol.serialize_sol() == before);
}

TEST_CASE("local search never worsens and is idempotent on its own output") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const Instance inst = testing::random_instance(rng, 25 + rng.int_below(15), 100, 8, 30);
        Solution sol = testing::random_feasible_solution(inst, rng);
        const long long initial = sol.cost();

        Params params = Params::for_instance(inst);
        SearchEngine engine(inst, params, rng);
        for (int c = 1; c <= inst.customer_count(); ++c) engine.cache().push(c);
        Incumbent incumbent;
        incumbent.offer(sol);

        engine.local_search_improvement(sol, incumbent);
        CHECK(sol.cost() <= initial);
        CHECK(sol.check_feasible(inst).feasible);

        const long long settled = sol.cost();
        engine.local_search_improvement(sol, incumbent);
        CHECK(sol.cost() == settled);
    }
}

TEST_CASE("perturbation plus local search keeps solutions feasible") {
    Rng rng(17);
    const Instance inst = testing::generate_xml_style(500, {1, 1, 2, 2, 9});
    Params params = Params::for_instance(inst);
    SearchEngine engine(inst, params, rng);
    Solution sol = testing::random_feasible_solution(inst, rng);
    Incumbent incumbent;
    incumbent.offer(sol);

    for (int step = 0; step < 60; ++step) {
        engine.destroy_repair(sol, incumbent, step % 3 == 0 ? RepairStrategy::kFull
                                              : step % 3 == 1 ? RepairStrategy::kFullGranular
                                                              : RepairStrategy::kGranular);
        engine.local_search_improvement(sol, incumbent);
        const auto report = sol.check_feasible(inst);
        REQUIRE_MESSAGE(report.feasible, report.violation);
        REQUIRE(sol.cost() == Solution::recompute_cost(inst, sol.routes()));
    }
    CHECK(incumbent.best.check_feasible(inst).feasible);
}
