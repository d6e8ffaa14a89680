#pragma once

#include <string>
#include <vector>

#include "mscvrp/instance.hpp"
#include "mscvrp/rng.hpp"

namespace mscvrp {

struct FeasibilityReport {
    bool feasible = true;
    std::string violation;  // first violation found, empty when feasible
};

// A set of depot-anchored routes covering every customer exactly once, with
// cached per-route loads and total cost. Value-like: owned and mutated by a
// single search thread, freely movable between threads.
class Solution {
public:
    Solution() = default;

    // Builds from raw routes, dropping empty ones and computing caches.
    static Solution from_routes(const Instance& inst, std::vector<std::vector<int>> routes);

    const std::vector<std::vector<int>>& routes() const { return routes_; }
    int route_count() const { return static_cast<int>(routes_.size()); }
    long long route_load(int r) const { return loads_[r]; }
    long long cost() const { return cost_; }
    bool empty() const { return routes_.empty(); }

    // Engine-grade mutable access. Callers are responsible for keeping the
    // load and cost caches consistent; randomized tests assert zero drift.
    std::vector<int>& route(int r) { return routes_[r]; }
    void set_route_load(int r, long long load) { loads_[r] = load; }
    void add_cost(long long delta) { cost_ += delta; }
    void append_route(std::vector<int> customers, long long load);
    void remove_route(int r);
    void rebuild_caches(const Instance& inst);

    // Exact recomputation of the total length from scratch.
    static long long recompute_cost(const Instance& inst, const std::vector<std::vector<int>>& routes);
    static long long route_cost(const Instance& inst, const std::vector<int>& route);

    // Partition + capacity check; reports the first violation found.
    FeasibilityReport check_feasible(const Instance& inst) const;

    // Route order and orientation are not semantically meaningful. The
    // canonical form orients each route smaller-end-first and sorts routes by
    // their first customer; it backs uniqueness in the elite pool.
    std::vector<std::vector<int>> canonical_routes() const;
    std::string canonical_key() const;

    // CVRPLIB-style solution text: one "Route #k: c1 c2 ..." line per route
    // plus a final "Cost <total>" line.
    std::string serialize_sol() const;
    static Solution parse_sol(const std::string& text, const Instance& inst);

private:
    std::vector<std::vector<int>> routes_;
    std::vector<long long> loads_;
    long long cost_ = 0;
};

// Count of customers whose route adjacency in `a` is not preserved in `b`,
// with an extra unit for customers that start a route in `a` but are interior
// in `b`. Asymmetric in its arguments; callers pass (best, candidate).
long long proximity(const Instance& inst, const Solution& a, const Solution& b);

// Percentage excess of an obtained cost over a positive reference.
double gap_percent(double obtained, double reference);

// A single permutation of all customers with its cyclic depot-to-depot cost;
// the path-relinking representation.
struct GiantTour {
    std::vector<int> order;
    long long cost = 0;
};

long long giant_tour_cost(const Instance& inst, const std::vector<int>& order);

}  // namespace mscvrp
