#include "mscvrp/splitpr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mscvrp {

namespace {
constexpr int kDepot = 0;
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}  // namespace

GiantTour concatenate(const Instance& inst, const Solution& sol, Rng& rng) {
    std::vector<int> route_order(sol.route_count());
    for (int r = 0; r < sol.route_count(); ++r) route_order[r] = r;
    rng.shuffle(route_order);

    GiantTour tour;
    tour.order.reserve(inst.customer_count());
    for (int r : route_order)
        tour.order.insert(tour.order.end(), sol.routes()[r].begin(), sol.routes()[r].end());
    tour.cost = giant_tour_cost(inst, tour.order);
    return tour;
}

Solution split_tour(const Instance& inst, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<long long> label(n + 1, kInf);
    std::vector<int> pred(n + 1, 0);
    label[0] = 0;

    for (int i = 1; i <= n; ++i) {
        long long load = 0;
        long long cost = 0;
        for (int j = i; j <= n; ++j) {
            const int c = order[j - 1];
            load += inst.demand(c);
            if (load > inst.capacity()) break;
            if (j == i) {
                cost = inst.distance(kDepot, c) + inst.distance(c, kDepot);
            } else {
                // extend the route (..., prev, depot) to (..., prev, c, depot)
                const int prev = order[j - 2];
                cost += inst.distance(prev, c) + inst.distance(c, kDepot) - inst.distance(prev, kDepot);
            }
            if (label[i - 1] + cost < label[j]) {
                label[j] = label[i - 1] + cost;
                pred[j] = i - 1;
            }
        }
    }

    std::vector<std::vector<int>> routes;
    int j = n;
    while (j > 0) {
        const int i = pred[j];
        routes.emplace_back(order.begin() + i, order.begin() + j);
        j = i;
    }
    std::reverse(routes.begin(), routes.end());
    return Solution::from_routes(inst, std::move(routes));
}

std::vector<int> restricted_nodes(const GiantTour& current, const GiantTour& guiding) {
    std::vector<int> nodes;
    for (std::size_t p = 0; p < current.order.size(); ++p)
        if (current.order[p] != guiding.order[p]) nodes.push_back(current.order[p]);
    return nodes;
}

long long truncated_move_budget(long long restricted_size, double truncation) {
    return static_cast<long long>(std::ceil(static_cast<double>(restricted_size) / 2.0 * truncation));
}

long long tour_swap_delta(const Instance& inst, const std::vector<int>& order, int p, int q) {
    if (p == q) return 0;
    if (p > q) std::swap(p, q);
    const int n = static_cast<int>(order.size());
    const int a = order[p], b = order[q];
    const int before_p = p == 0 ? kDepot : order[p - 1];
    const int after_q = q == n - 1 ? kDepot : order[q + 1];
    if (q == p + 1)
        return inst.distance(before_p, b) + inst.distance(a, after_q) - inst.distance(before_p, a) -
               inst.distance(b, after_q);
    const int after_p = order[p + 1];
    const int before_q = order[q - 1];
    return inst.distance(before_p, b) + inst.distance(b, after_p) + inst.distance(before_q, a) +
           inst.distance(a, after_q) - inst.distance(before_p, a) - inst.distance(a, after_p) -
           inst.distance(before_q, b) - inst.distance(b, after_q);
}

std::optional<SwapChoice> best_position_swap(const Instance& inst,
                                             const GiantTour& current,
                                             const std::vector<int>& pos_current,
                                             const std::vector<int>& pos_guiding,
                                             const std::vector<int>& restricted,
                                             const std::vector<char>& tabu) {
    std::optional<SwapChoice> best;
    for (int node : restricted) {
        if (tabu[node]) continue;
        const int pi = pos_current[node];
        const int pg = pos_guiding[node];
        if (pi == pg) continue;  // already at its guiding position
        const long long delta = tour_swap_delta(inst, current.order, pi, pg);
        if (!best || delta < best->delta) best = SwapChoice{node, pi, pg, delta};
    }
    return best;
}

RelinkStats evaluate_neighborhood(const Instance& inst,
                                  GiantTour current,
                                  const GiantTour& guiding,
                                  long long budget,
                                  const std::vector<int>& restricted,
                                  ElitePool& pool,
                                  Incumbent& incumbent,
                                  SearchEngine& engine) {
    RelinkStats stats;
    stats.performed = budget > 0 && !restricted.empty();

    std::vector<int> pos_current(inst.dimension(), -1), pos_guiding(inst.dimension(), -1);
    for (std::size_t p = 0; p < current.order.size(); ++p) pos_current[current.order[p]] = static_cast<int>(p);
    for (std::size_t p = 0; p < guiding.order.size(); ++p) pos_guiding[guiding.order[p]] = static_cast<int>(p);
    std::vector<char> tabu(inst.dimension(), 0);

    for (long long move = 0; move < budget; ++move) {
        const auto choice = best_position_swap(inst, current, pos_current, pos_guiding, restricted, tabu);
        if (!choice) break;

        const int displaced = current.order[choice->pos_guiding];
        std::swap(current.order[choice->pos_current], current.order[choice->pos_guiding]);
        pos_current[choice->node] = choice->pos_guiding;
        pos_current[displaced] = choice->pos_current;
        current.cost += choice->delta;
        ++stats.swaps;

        if (choice->delta < 0) {
            Solution candidate = split_tour(inst, current.order);
            if (engine.params().size_class == RouteSizeClass::kLong) {
                // Post-improvement restricted to level-0 operators, focused on
                // the customers the swap just moved.
                engine.cache().clear();
                engine.cache().push(choice->node);
                engine.cache().push(displaced);
                engine.random_neighborhood_search(0, candidate, incumbent);
            }
            if (pool.offer(inst, candidate)) ++stats.offers;
            incumbent.offer(candidate);
        }
        tabu[choice->node] = 1;

        if (current.cost <= guiding.cost) break;  // intermediate already beats the guide
    }
    return stats;
}

RelinkStats path_relinking(const Instance& inst,
                           ElitePool& pool,
                           Incumbent& incumbent,
                           SearchEngine& engine,
                           Rng& rng) {
    if (pool.size() < 2) return {};

    const Solution& guiding_sol = incumbent.best;
    const std::string guiding_key = guiding_sol.canonical_key();
    std::vector<int> candidates;
    for (int i = 0; i < pool.size(); ++i)
        if (pool.members()[i].canonical_key() != guiding_key) candidates.push_back(i);
    if (candidates.empty()) return {};
    const int initial_idx = candidates[rng.int_below(static_cast<int>(candidates.size()))];

    GiantTour initial = concatenate(inst, pool.members()[initial_idx], rng);
    GiantTour guiding = concatenate(inst, guiding_sol, rng);

    std::vector<int> restricted = restricted_nodes(initial, guiding);
    if (restricted.empty()) return {};
    rng.shuffle(restricted);
    const long long budget =
        truncated_move_budget(static_cast<long long>(restricted.size()), engine.params().pr_truncation);

    return evaluate_neighborhood(inst, std::move(initial), guiding, budget, restricted, pool, incumbent, engine);
}

}  // namespace mscvrp
