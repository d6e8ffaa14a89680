#include <cmath>
#include <span>

#include "doctest.h"
#include "generators.hpp"
#include "mscvrp/construction.hpp"
#include "mscvrp/elite.hpp"
#include "mscvrp/features.hpp"

using namespace mscvrp;

namespace {

// five customers on a line; capacity keeps many distinct feasible layouts
Instance line_instance() {
    return Instance::create("line", {0, 10, 20, 30, 40, 50}, {0, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 1, 1}, 3);
}

}  // namespace

TEST_CASE("offers fill an empty pool and reject duplicates") {
    const Instance inst = line_instance();
    ElitePool pool(2, 2);
    const Solution s1 = Solution::from_routes(inst, {{1, 2, 3}, {4, 5}});
    CHECK(pool.offer(inst, s1));
    CHECK(pool.size() == 1);

    const Solution dup = Solution::from_routes(inst, {{5, 4}, {3, 2, 1}});  // same canonical form
    CHECK_FALSE(pool.offer(inst, dup));
    CHECK(pool.size() == 1);
}

TEST_CASE("a cheaper candidate replaces the worst member of a full pool") {
    const Instance inst = line_instance();
    ElitePool pool(2, 2);
    const Solution good = Solution::from_routes(inst, {{1, 2, 3}, {4, 5}});
    const Solution bad = Solution::from_routes(inst, {{1, 4, 3}, {2, 5}});
    REQUIRE(good.cost() < bad.cost());
    pool.offer(inst, good);
    pool.offer(inst, bad);
    REQUIRE(pool.size() == 2);

    const Solution better = Solution::from_routes(inst, {{1, 2}, {3, 4, 5}});
    REQUIRE(better.cost() < bad.cost());
    CHECK(pool.offer(inst, better));
    CHECK(pool.size() == 2);
    CHECK_FALSE(pool.contains(bad));
    CHECK(pool.contains(good));  // the best member is never evicted
}

TEST_CASE("a worse candidate within the cost interval wins on diversity") {
    const Instance inst = line_instance();
    ElitePool pool(2, 2);
    const Solution best = Solution::from_routes(inst, {{1, 2}, {3, 4, 5}});     // 140
    const Solution worst = Solution::from_routes(inst, {{5, 1}, {2, 4, 3}});    // 180
    REQUIRE(best.cost() == 140);
    REQUIRE(worst.cost() == 180);
    pool.offer(inst, best);
    pool.offer(inst, worst);
    REQUIRE(pool.size() == 2);

    // a candidate outside the 20% interval is rejected outright
    const Solution far = Solution::from_routes(inst, {{3, 1, 5}, {2, 4}});  // 220 vs worst 180
    REQUIRE(far.cost() == 220);
    CHECK_FALSE(pool.offer(inst, far));

    // candidate: costlier than the worst but inside the 20% interval and
    // farther from the best than the worst is
    const Solution candidate = Solution::from_routes(inst, {{2, 1, 4}, {5, 3}});  // 200
    REQUIRE(candidate.cost() == 200);
    REQUIRE(proximity(inst, best, worst) == 2);
    REQUIRE(proximity(inst, best, candidate) == 3);

    CHECK(pool.offer(inst, candidate));
    CHECK(pool.contains(best));
    CHECK(pool.contains(candidate));
    CHECK_FALSE(pool.contains(worst));
}

TEST_CASE("plain diversity control restarts after the non-improving limit") {
    const Instance inst = testing::generate_small(50, 6);
    const Params params = Params::for_instance(inst);
    Rng rng(0);
    InitialPool init = generate_initial_pool(inst, params, rng);
    ElitePool pool = std::move(init.pool);

    const ManageOutcome improved = manage_plain(pool, true, inst, params, rng);
    CHECK_FALSE(improved.restarted);
    CHECK(pool.non_improving() == 0);

    ManageOutcome last;
    for (int i = 0; i < kRestartLimit; ++i) {
        last = manage_plain(pool, false, inst, params, rng);
        CHECK_FALSE(last.restarted);
    }
    CHECK(pool.non_improving() == kRestartLimit);

    last = manage_plain(pool, false, inst, params, rng);
    CHECK(last.restarted);
    CHECK(last.counter == kRestartLimit + 1);
    CHECK(last.threshold == kRestartLimit);
    CHECK(pool.non_improving() == 0);
    CHECK(pool.regen_count() == 1);
    CHECK(pool.size() >= 1);
    for (const Solution& s : pool.members()) CHECK(s.check_feasible(inst).feasible);
}

TEST_CASE("guidance weight arithmetic") {
    CHECK(initial_guidance_weight(1.0, 0.0) == doctest::Approx(1.0));
    CHECK(initial_guidance_weight(0.95, 0.05) == doctest::Approx(0.90));
    CHECK(std::ceil(initial_guidance_weight(0.95, 0.05) * kRestartLimit) == doctest::Approx(3600));
    CHECK(std::ceil(1.0 * kRestartLimit) == doctest::Approx(4000));
    // clamped into (0, 1]
    CHECK(initial_guidance_weight(0.2, 0.9) > 0.0);
    CHECK(initial_guidance_weight(2.0, 0.0) == doctest::Approx(1.0));
    // the restart update folds fresh statistics into the weight
    CHECK(clamp_guidance_weight((0.9 + 0.9 + 0.1) / 2.0) == doctest::Approx(0.95));
}

TEST_CASE("guided diversity control restarts at the weighted threshold") {
    const Instance inst = testing::generate_small(51, 6);
    const Params params = Params::for_instance(inst);
    Rng rng(0);
    InitialPool init = generate_initial_pool(inst, params, rng);
    ElitePool pool = std::move(init.pool);
    pool.set_guidance_weight(0.5);  // threshold 2000

    ManageOutcome last;
    for (int i = 0; i < 2000; ++i) {
        last = manage_guided(pool, false, inst, params, rng);
        CHECK_FALSE(last.restarted);
        CHECK(last.threshold == 2000);
    }
    last = manage_guided(pool, false, inst, params, rng);
    CHECK(last.restarted);
    CHECK(last.counter == 2001);

    // weight after the restart follows the documented update, clamped
    const auto [alpha, beta] = pool_guidance_stats(inst, std::span<const Solution>(pool.members()));
    CHECK(pool.guidance_weight() == doctest::Approx(clamp_guidance_weight((0.5 + alpha + beta) / 2.0)));
    CHECK(pool.guidance_weight() <= 1.0);
    CHECK(pool.guidance_weight() > 0.0);
}
