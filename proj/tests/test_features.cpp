#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "mscvrp/features.hpp"
#include "mscvrp/rng.hpp"
#include "oracles.hpp"

using namespace mscvrp;

namespace {

// depot (0,0); customers (10,2) q4, (8,11) q3, (-3,9) q5, (-12,4) q4; Q=10
Instance fixture_instance() {
    return Instance::create("fixture", {0, 10, 8, -3, -12}, {0, 2, 11, 9, 4}, {0, 4, 3, 5, 4}, 10);
}

Solution fixture_solution(const Instance& inst) { return Solution::from_routes(inst, {{1, 2}, {3, 4}}); }

}  // namespace

TEST_CASE("instance features on the fixture match the spreadsheet oracle") {
    const Instance inst = fixture_instance();
    const auto f = instance_features(inst, 2);
    CHECK(f[0] == doctest::Approx(4).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(2).epsilon(1e-12));
    CHECK(f[2] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(f[3] == doctest::Approx(44.3703398404019).epsilon(1e-12));
    CHECK(f[4] == doctest::Approx(52.0021831998692).epsilon(1e-12));
    CHECK(f[5] == doctest::Approx(11.4838632892749).epsilon(1e-12));
    CHECK(f[6] == doctest::Approx(1.69436830507534).epsilon(1e-12));
    CHECK(f[7] == doctest::Approx(1.46294614515351).epsilon(1e-12));
    CHECK(f[8] == doctest::Approx(0.987259660694082).epsilon(1e-12));
}

TEST_CASE("solution features on the fixture match the spreadsheet oracle") {
    const Instance inst = fixture_instance();
    const Solution sol = fixture_solution(inst);
    const auto s = solution_features(inst, sol);
    const double expected[22] = {
        9.06995721149865,   0.60286304821101,    0.835949849265597,  0.0913453687360146,
        13.1252905747045,   0.476179934030963,   0.350831020820847,  13.1252905747045,
        0.314607529188772,  0.314607529188772,   11.4838632892749,   4,
        4.5,                0.5,                 0.293740115524123,  11,
        0.5,                0.5,                 0.8,                0.1,
        0.0762892018567951, 0.00276773964741436,
    };
    for (int k = 0; k < 22; ++k) {
        CAPTURE(k);
        CHECK(s[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    }
}

TEST_CASE("a single full route maximizes utilization with zero spread") {
    const Instance inst = Instance::create("full", {0, 1, 2}, {0, 1, 2}, {0, 4, 6}, 10);
    const Solution sol = Solution::from_routes(inst, {{1, 2}});
    const auto s = solution_features(inst, sol);
    CHECK(s[18] == doctest::Approx(1.0));  // S19
    CHECK(s[19] == doctest::Approx(0.0));  // S20
    for (int k = 0; k < 22; ++k) CHECK(std::isfinite(s[k]));
}

TEST_CASE("instance feature basics") {
    Rng rng(3);
    const Instance inst = testing::random_instance(rng, 15, 60, 7, 20);
    const auto f = instance_features(inst, 3);
    CHECK(f[0] == doctest::Approx(15));

    const Instance tiny = Instance::create("i03", {0, 1, 2}, {0, 0, 0}, {0, 5, 5}, 5);
    CHECK(instance_features(tiny, 3)[2] == doctest::Approx(10.0 / 15.0));

    const Instance colocated = Instance::create("point", {3, 7, 7, 7}, {4, 9, 9, 9}, {0, 1, 1, 1}, 5);
    const auto g = instance_features(colocated, 1);
    CHECK(g[3] == doctest::Approx(0.0));
    CHECK(g[4] == doctest::Approx(0.0));
}

TEST_CASE("coordinate scaling moves exactly the metric features") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = testing::random_instance(rng, 6 + rng.int_below(14), 90, 9, 24);
        const Solution sol = testing::random_feasible_solution(inst, rng);
        const double lambda = trial % 2 == 0 ? 2.0 : 0.5;

        std::vector<double> xs, ys;
        std::vector<long long> demands;
        for (int node = 0; node < inst.dimension(); ++node) {
            xs.push_back(inst.x(node) * lambda);
            ys.push_back(inst.y(node) * lambda);
            demands.push_back(inst.demand(node));
        }
        const Instance scaled = Instance::create("scaled", xs, ys, demands, inst.capacity());
        const Solution scaled_sol = Solution::from_routes(scaled, sol.routes());

        const auto base = solution_features(inst, sol);
        const auto moved = solution_features(scaled, scaled_sol);
        const int scale_by_lambda[] = {1, 2, 5, 6, 8, 11, 15, 16};     // S01,S02,S05,S06,S08,S11,S15,S16
        const int invariant[] = {3, 4, 7, 9, 10, 12, 13, 14, 17, 18, 19, 20};
        const int scale_inverse[] = {21, 22};
        for (int k : scale_by_lambda) CHECK(moved[k - 1] == doctest::Approx(base[k - 1] * lambda).epsilon(1e-9));
        for (int k : invariant) CHECK(moved[k - 1] == doctest::Approx(base[k - 1]).epsilon(1e-9));
        for (int k : scale_inverse) CHECK(moved[k - 1] == doctest::Approx(base[k - 1] / lambda).epsilon(1e-9));
    }
}

TEST_CASE("features ignore route order and orientation") {
    Rng rng(31);
    const Instance inst = testing::random_instance(rng, 14, 70, 6, 15);
    const Solution sol = testing::random_feasible_solution(inst, rng);
    const auto base = solution_features(inst, sol);

    auto routes = sol.routes();
    rng.shuffle(routes);
    for (auto& r : routes)
        if (rng.coin()) std::reverse(r.begin(), r.end());
    const Solution shuffled = Solution::from_routes(inst, routes);
    const auto moved = solution_features(inst, shuffled);
    for (int k = 0; k < 22; ++k) {
        CAPTURE(k);
        CHECK(moved[k] == doctest::Approx(base[k]).epsilon(1e-9));
    }
}

TEST_CASE("pool guidance statistics are plain means") {
    const Instance inst = fixture_instance();
    const Solution two_routes = fixture_solution(inst);
    const Solution split4 = Solution::from_routes(inst, {{1}, {2}, {3}, {4}});

    const std::vector<Solution> single{two_routes};
    const auto [a1, b1] = pool_guidance_stats(inst, single);
    const auto [s19, s20] = utilization_stats(inst, two_routes);
    CHECK(a1 == doctest::Approx(s19));
    CHECK(b1 == doctest::Approx(s20));

    const std::vector<Solution> pair{two_routes, split4};
    const auto [a2, b2] = pool_guidance_stats(inst, pair);
    const auto [p19, p20] = utilization_stats(inst, split4);
    CHECK(a2 == doctest::Approx(0.5 * (s19 + p19)));
    CHECK(b2 == doctest::Approx(0.5 * (s20 + p20)));

    CHECK_THROWS_AS(pool_guidance_stats(inst, std::span<const Solution>{}), ContractViolation);
}

TEST_CASE("dataset export shape") {
    std::ostringstream empty;
    export_dataset(empty, {});
    const std::string header = empty.str();
    CHECK(std::count(header.begin(), header.end(), '\n') == 1);
    CHECK(std::count(header.begin(), header.end(), ',') == 31);  // 32 columns

    const Instance inst = fixture_instance();
    const FeatureVector with_label = extract_features(inst, fixture_solution(inst), 1);
    const FeatureVector without_label = extract_features(inst, fixture_solution(inst));
    std::vector<std::pair<std::string, FeatureVector>> rows{{"a", with_label}, {"b", without_label}};
    std::ostringstream out;
    export_dataset(out, rows);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) CHECK(std::count(line.begin(), line.end(), ',') == 31);
    CHECK(text.find(",1\n") != std::string::npos);   // labeled row
    CHECK(text.rfind(",\n") != std::string::npos);   // unlabeled row keeps the field empty
}
