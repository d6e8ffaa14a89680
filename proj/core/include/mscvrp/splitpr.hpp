#pragma once

#include <optional>
#include <vector>

#include "mscvrp/elite.hpp"
#include "mscvrp/instance.hpp"
#include "mscvrp/params.hpp"
#include "mscvrp/rng.hpp"
#include "mscvrp/search.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

// Giant-tour construction: the solution's routes are appended whole, in
// shuffled route order, keeping each route's internal customer order.
GiantTour concatenate(const Instance& inst, const Solution& sol, Rng& rng);

// Optimal partition of a giant tour into contiguous capacity-feasible routes
// by a shortest path over the auxiliary DAG of feasible subsequences; routes
// come back in tour order. O(n^2) worst case with an early capacity break.
Solution split_tour(const Instance& inst, const std::vector<int>& order);

// Customers positioned differently in the two tours.
std::vector<int> restricted_nodes(const GiantTour& current, const GiantTour& guiding);

// Number of relinking moves explored: ceil(half the restricted-set size
// scaled by the truncation index).
long long truncated_move_budget(long long restricted_size, double truncation);

// Exact cyclic-cost change of exchanging positions p and q of the tour.
long long tour_swap_delta(const Instance& inst, const std::vector<int>& order, int p, int q);

struct SwapChoice {
    int node = -1;
    int pos_current = -1;
    int pos_guiding = -1;
    long long delta = 0;
};

// Cheapest swap moving a non-tabu restricted node to its guiding position;
// nothing when every candidate is tabu or already placed.
std::optional<SwapChoice> best_position_swap(const Instance& inst,
                                             const GiantTour& current,
                                             const std::vector<int>& pos_current,
                                             const std::vector<int>& pos_guiding,
                                             const std::vector<int>& restricted,
                                             const std::vector<char>& tabu);

struct RelinkStats {
    bool performed = false;
    long long swaps = 0;
    long long offers = 0;  // split solutions offered to the pool
};

// Walks the current tour toward the guiding tour one position-swap at a time.
// Cost-improving intermediates are split and offered to the pool; the walk
// stops early once the intermediate beats the guiding tour. Long-route
// instances give each accepted split one level-0 local search pass.
RelinkStats evaluate_neighborhood(const Instance& inst,
                                  GiantTour current,
                                  const GiantTour& guiding,
                                  long long budget,
                                  const std::vector<int>& restricted,
                                  ElitePool& pool,
                                  Incumbent& incumbent,
                                  SearchEngine& engine);

// Full hybrid step: picks the incumbent as guiding parent and a random other
// pool member as initial parent, concatenates both, and explores the
// truncated relinking path. No-op for pools smaller than two.
RelinkStats path_relinking(const Instance& inst,
                           ElitePool& pool,
                           Incumbent& incumbent,
                           SearchEngine& engine,
                           Rng& rng);

}  // namespace mscvrp
