#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "mscvrp/solver.hpp"
#include "oracles.hpp"

using namespace mscvrp;

TEST_CASE("tiny instances are solved to optimality within a second") {
    const Instance inst = testing::generate_small(101, 5);
    const long long optimal = testing::brute_force_optimal(inst);

    SolverConfig config;
    config.time_limit_s = 1.0;
    config.seed = 0;
    const RunResult result = solve(inst, config);
    CHECK(result.best_cost == optimal);
    CHECK(result.best.check_feasible(inst).feasible);
}

TEST_CASE("identical configuration and seed reproduce the run exactly") {
    const Instance inst = testing::generate_xml_style(321, {1, 2, 2, 3, 1});
    SolverConfig config;
    config.mode = SolverConfig::Mode::kGuided;
    config.time_limit_s = 3600;  // the iteration budget is the binding stop
    config.max_iterations = 120;
    config.seed = 7;
    config.record_trace = true;

    const RunResult first = solve(inst, config);
    const RunResult second = solve(inst, config);
    CHECK(first.best_cost == second.best_cost);
    CHECK(first.iterations == second.iterations);
    CHECK(first.best.serialize_sol() == second.best.serialize_sol());
    REQUIRE(first.trace.improvements.size() == second.trace.improvements.size());
    for (std::size_t i = 0; i < first.trace.improvements.size(); ++i) {
        CHECK(first.trace.improvements[i].iteration == second.trace.improvements[i].iteration);
        CHECK(first.trace.improvements[i].cost == second.trace.improvements[i].cost);
    }
    CHECK(first.trace.pr_calls == second.trace.pr_calls);
    CHECK(first.trace.pr_offers == second.trace.pr_offers);
}

TEST_CASE("disabling path relinking removes all relinking events") {
    const Instance inst = testing::generate_xml_style(322, {2, 1, 2, 2, 1});
    SolverConfig config;
    config.enable_path_relinking = false;
    config.time_limit_s = 3600;
    config.max_iterations = 60;
    config.record_trace = true;
    const RunResult result = solve(inst, config);
    CHECK(result.trace.pr_calls == 0);
    CHECK(result.trace.pr_offers == 0);

    config.enable_path_relinking = true;
    const RunResult with_pr = solve(inst, config);
    CHECK(with_pr.trace.pr_calls > 0);
}

TEST_CASE("the incumbent cost never increases along the trace") {
    const Instance inst = testing::generate_xml_style(323, {3, 3, 4, 2, 1});
    SolverConfig config;
    config.time_limit_s = 3600;
    config.max_iterations = 150;
    config.record_trace = true;
    config.mode = SolverConfig::Mode::kGuided;
    const RunResult result = solve(inst, config);
    REQUIRE(!result.trace.improvements.empty());
    for (std::size_t i = 1; i < result.trace.improvements.size(); ++i) {
        CHECK(result.trace.improvements[i].cost < result.trace.improvements[i - 1].cost);
        CHECK(result.trace.improvements[i].iteration >= result.trace.improvements[i - 1].iteration);
    }
    CHECK(result.trace.improvements.back().cost == result.best_cost);
}

TEST_CASE("restart events coincide with the counter crossing the threshold") {
    // a tiny instance is solved immediately, so non-improving iterations pile
    // up and force restarts
    const Instance inst = testing::generate_small(55, 6);
    SolverConfig config;
    config.time_limit_s = 3600;
    config.max_iterations = 8500;
    config.record_trace = true;

    SUBCASE("plain threshold") {
        const RunResult result = solve(inst, config);
        REQUIRE(!result.trace.restarts.empty());
        for (const auto& restart : result.trace.restarts) {
            CHECK(restart.threshold == 4000);
            CHECK(restart.counter > restart.threshold);
        }
    }

    SUBCASE("guided threshold never exceeds the plain one") {
        config.mode = SolverConfig::Mode::kGuided;
        const RunResult result = solve(inst, config);
        REQUIRE(!result.trace.restarts.empty());
        for (const auto& restart : result.trace.restarts) {
            CHECK(restart.threshold <= 4000);
            CHECK(restart.counter > restart.threshold);
            CHECK(restart.weight > 0.0);
            CHECK(restart.weight <= 1.0);
        }
    }
}

TEST_CASE("a reached target cost stops the run early") {
    const Instance inst = testing::generate_small(102, 6);
    const long long optimal = testing::brute_force_optimal(inst);
    SolverConfig config;
    config.time_limit_s = 30.0;
    config.target_cost = optimal;
    const RunResult result = solve(inst, config);
    CHECK(result.best_cost == optimal);
    CHECK(result.elapsed_s < 29.0);  // far below the wall-clock budget
}

TEST_CASE("protocol seeds are the run counter minus one") {
    CHECK(seed_for_run(1) == 0);
    CHECK(seed_for_run(5) == 4);
    std::set<std::uint64_t> seeds;
    for (int run = 1; run <= 5; ++run) seeds.insert(seed_for_run(run));
    CHECK(seeds.size() == 5);
    CHECK_THROWS_AS(seed_for_run(0), ContractViolation);
}
