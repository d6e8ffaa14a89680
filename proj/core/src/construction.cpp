#include "mscvrp/construction.hpp"

#include <algorithm>
#include <cmath>

#include "mscvrp/features.hpp"

namespace mscvrp {

namespace {

constexpr int kDepot = 0;

struct Saving {
    int i, j;
    long long value;
};

// Cheapest feasible insertion of `customer` over all positions of all routes.
// Returns {route, position, delta} or nothing.
struct InsertionSpot {
    int route = -1;
    int position = -1;
    long long delta = 0;
};

std::optional<InsertionSpot> best_insertion(const Instance& inst, const Solution& sol, int customer) {
    std::optional<InsertionSpot> best;
    const long long q = inst.demand(customer);
    for (int r = 0; r < sol.route_count(); ++r) {
        if (sol.route_load(r) + q > inst.capacity()) continue;
        const auto& route = sol.routes()[r];
        for (int p = 0; p <= static_cast<int>(route.size()); ++p) {
            const int before = p == 0 ? kDepot : route[p - 1];
            const int after = p == static_cast<int>(route.size()) ? kDepot : route[p];
            const long long delta =
                inst.distance(before, customer) + inst.distance(customer, after) - inst.distance(before, after);
            if (!best || delta < best->delta) best = InsertionSpot{r, p, delta};
        }
    }
    return best;
}

}  // namespace

Solution clarke_wright(const Instance& inst, int neighbor_cap) {
    const int n = inst.customer_count();
    std::vector<std::vector<int>> routes;
    routes.reserve(n);
    for (int c = 1; c <= n; ++c) routes.push_back({c});

    // route membership and end flags per customer
    std::vector<int> route_of(n + 1);
    std::vector<long long> load(n);
    for (int c = 1; c <= n; ++c) {
        route_of[c] = c - 1;
        load[c - 1] = inst.demand(c);
    }

    std::vector<Saving> savings;
    for (int i = 1; i <= n; ++i) {
        const auto& nb = inst.neighbors_of(i);
        const int limit = std::min<int>(neighbor_cap, static_cast<int>(nb.size()));
        for (int k = 0; k < limit; ++k) {
            const int j = nb[k];
            const int lo = std::min(i, j), hi = std::max(i, j);
            savings.push_back({lo, hi, inst.distance(kDepot, lo) + inst.distance(kDepot, hi) - inst.distance(lo, hi)});
        }
    }
    // Pairs can be generated from both endpoints' neighbor lists.
    std::sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    savings.erase(std::unique(savings.begin(), savings.end(),
                              [](const Saving& a, const Saving& b) { return a.i == b.i && a.j == b.j; }),
                  savings.end());

    for (const Saving& s : savings) {
        const int ri = route_of[s.i], rj = route_of[s.j];
        if (ri == rj) continue;
        if (load[ri] + load[rj] > inst.capacity()) continue;
        auto& a = routes[ri];
        auto& b = routes[rj];
        const bool i_head = a.front() == s.i, i_tail = a.back() == s.i;
        const bool j_head = b.front() == s.j, j_tail = b.back() == s.j;
        if (!(i_head || i_tail) || !(j_head || j_tail)) continue;

        // Orient both routes so that i ends route a and j starts route b.
        if (!i_tail) std::reverse(a.begin(), a.end());
        if (!j_head) std::reverse(b.begin(), b.end());
        a.insert(a.end(), b.begin(), b.end());
        for (int c : b) route_of[c] = ri;
        load[ri] += load[rj];
        b.clear();
        load[rj] = 0;
    }

    routes.erase(std::remove_if(routes.begin(), routes.end(), [](const auto& r) { return r.empty(); }),
                 routes.end());
    return Solution::from_routes(inst, std::move(routes));
}

std::optional<Solution> perturbed_initial(const Solution& base, const Instance& inst, Rng& rng) {
    if (base.route_count() < 2) return std::nullopt;

    Solution candidate = base;
    int r1 = rng.int_below(candidate.route_count());
    int r2 = rng.int_below(candidate.route_count() - 1);
    if (r2 >= r1) ++r2;

    std::vector<int> freed;
    freed.insert(freed.end(), candidate.routes()[r1].begin(), candidate.routes()[r1].end());
    freed.insert(freed.end(), candidate.routes()[r2].begin(), candidate.routes()[r2].end());
    if (r1 < r2) std::swap(r1, r2);
    candidate.remove_route(r1);
    candidate.remove_route(r2);
    candidate.rebuild_caches(inst);
    rng.shuffle(freed);

    for (int c : freed) {
        auto spot = best_insertion(inst, candidate, c);
        if (spot) {
            candidate.route(spot->route).insert(candidate.route(spot->route).begin() + spot->position, c);
            candidate.set_route_load(spot->route, candidate.route_load(spot->route) + inst.demand(c));
            candidate.add_cost(spot->delta);
        } else if (rng.coin()) {
            candidate.append_route({c}, inst.demand(c));
            candidate.add_cost(2 * inst.distance(kDepot, c));
        } else {
            return std::nullopt;
        }
    }

    if (!candidate.check_feasible(inst).feasible) return std::nullopt;
    const long long estimated_routes =
        static_cast<long long>(std::ceil(inst.fractional_route_bound()));
    if (candidate.cost() < base.cost() || candidate.route_count() <= estimated_routes) return candidate;
    return std::nullopt;
}

InitialPool generate_initial_pool(const Instance& inst, const Params& params, Rng& rng) {
    InitialPool result;
    result.pool = ElitePool(params.pool_min, params.pool_max);

    Solution base = clarke_wright(inst, params.savings_neighbor_cap);
    result.pool.offer(inst, base);

    constexpr int kRetriesPerMember = 50;
    int budget = kRetriesPerMember * params.pool_min;
    while (result.pool.size() < params.pool_min && budget-- > 0) {
        auto candidate = perturbed_initial(base, inst, rng);
        if (candidate) result.pool.offer(inst, *candidate);
    }
    // Fallback: accept any feasible reshuffle of the savings solution.
    budget = kRetriesPerMember;
    while (result.pool.size() < params.pool_min && budget-- > 0 && base.route_count() >= 2) {
        Solution candidate = base;
        int r1 = rng.int_below(candidate.route_count());
        int r2 = rng.int_below(candidate.route_count() - 1);
        if (r2 >= r1) ++r2;
        std::vector<int> freed;
        freed.insert(freed.end(), candidate.routes()[r1].begin(), candidate.routes()[r1].end());
        freed.insert(freed.end(), candidate.routes()[r2].begin(), candidate.routes()[r2].end());
        if (r1 < r2) std::swap(r1, r2);
        candidate.remove_route(r1);
        candidate.remove_route(r2);
        candidate.rebuild_caches(inst);
        rng.shuffle(freed);
        for (int c : freed) {
            auto spot = best_insertion(inst, candidate, c);
            if (spot) {
                candidate.route(spot->route).insert(candidate.route(spot->route).begin() + spot->position, c);
                candidate.set_route_load(spot->route, candidate.route_load(spot->route) + inst.demand(c));
                candidate.add_cost(spot->delta);
            } else {
                candidate.append_route({c}, inst.demand(c));
                candidate.add_cost(2 * inst.distance(kDepot, c));
            }
        }
        if (candidate.check_feasible(inst).feasible) result.pool.offer(inst, candidate);
    }

    auto [alpha, beta] = pool_guidance_stats(inst, std::span<const Solution>(result.pool.members()));
    result.alpha = alpha;
    result.beta = beta;
    return result;
}

}  // namespace mscvrp
