#pragma once

#include <array>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "mscvrp/instance.hpp"
#include "mscvrp/params.hpp"
#include "mscvrp/rng.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

// Local search operators. The first nine form level 0 (intra- and inter-route
// moves); the ejection chains form level 1 and are tried only once level 0 is
// exhausted.
enum class MoveKind {
    kIntraRelocate,
    kIntraSwap,
    kTwoOpt,
    kInterRelocate,
    kInterSwap,
    kTwoOptStar,
    kSinglePathMove,
    kDoublePathMove,
    kCrossExchange,
    kEjectionRelocate,
    kEjectionPathMove,
};

int move_level(MoveKind kind);
const std::vector<MoveKind>& moves_for_level(int level);

// A fully parameterized move. `u` is the moved customer (or segment head),
// `v` the anchor customer the move targets. Ejection chains carry a second
// relocation (w moved next to x) that repairs the capacity violated by the
// first step.
struct Move {
    MoveKind kind{};
    int u = -1;
    int v = -1;
    bool after = false;   // insert after v instead of before
    bool flip = false;    // insert the segment reversed
    int len_u = 1;        // segment length starting at u
    int len_v = 1;        // segment length starting at v (cross exchange)
    int w = -1;
    int x = -1;
    bool after2 = false;  // repair insertion side
};

// Customer -> (route, position) lookup for a concrete solution.
struct NodeIndex {
    std::vector<int> route_of;
    std::vector<int> pos_of;
    void rebuild(const Solution& sol, int dimension);
};

// Exact cost change of a move, or nothing when the move is structurally
// invalid or capacity-infeasible (completed ejection chains must leave every
// touched route feasible). Integer arithmetic on the rounded metric.
std::optional<long long> move_delta(const Instance& inst,
                                    const Solution& sol,
                                    const NodeIndex& index,
                                    const Move& move);
std::optional<long long> move_delta(const Instance& inst, const Solution& sol, const Move& move);

// Applies a move by route surgery and refreshes the caches of the touched
// routes. The cost cache changes by exactly move_delta's value. Returns the
// customers whose position changed; they enter the vertex cache.
std::vector<int> apply_move(const Instance& inst, Solution& sol, const Move& move);

// All parameterizations of `kind` generated by the ordered pair (u, v).
void enumerate_moves(const Instance& inst,
                     const Solution& sol,
                     const NodeIndex& index,
                     MoveKind kind,
                     int u,
                     int v,
                     int granular_size,
                     std::vector<Move>& out);

// FIFO of banned (node, node) pairs, bounded capacity.
class TabuList {
public:
    explicit TabuList(int cap) : cap_(cap) {}
    void clear() { entries_.clear(); }
    int size() const { return static_cast<int>(entries_.size()); }
    bool contains(int a, int b) const;
    void insert(int a, int b);

private:
    std::deque<std::pair<int, int>> entries_;
    int cap_;
};

// Recently moved customers, the pruned improvement region scanned by every
// operator execution. Bounded; re-pushing refreshes recency.
class VertexCache {
public:
    explicit VertexCache(int cap) : cap_(cap) {}
    void clear() { entries_.clear(); }
    void push(int customer);
    const std::deque<int>& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }

private:
    std::deque<int> entries_;
    int cap_;
};

// Number of granular neighbors examined per vertex; grows on stagnation and
// resets when a new global best is found.
class GranularState {
public:
    GranularState(int init, int growth, int max) : init_(init), growth_(growth), max_(max), current_(init) {}
    int current() const { return current_; }
    void on_new_best() { current_ = init_; }
    void on_stagnation() { current_ = std::min(current_ + growth_, max_); }

private:
    int init_, growth_, max_;
    int current_;
};

enum class RepairStrategy { kFull, kFullGranular, kGranular };

// Rebuild strategy escalation: full insertion until repeated pool
// regenerations without a new best, then granular-limited insertion; a new
// best always falls back to full insertion.
RepairStrategy select_strategy(RouteSizeClass size_class, int regen_count, bool new_best_found);

// Global best tracker for one solver run.
struct Incumbent {
    Solution best;
    long long cost = std::numeric_limits<long long>::max();
    bool offer(const Solution& s) {
        if (s.cost() < cost) {
            best = s;
            cost = s.cost();
            return true;
        }
        return false;
    }
};

// The neighborhood-search phase: destroy/repair perturbation followed by the
// two-level randomized local search over the vertex cache.
class SearchEngine {
public:
    SearchEngine(const Instance& inst, const Params& params, Rng& rng);

    // Destroys one (long instances) or two (short instances) random routes
    // and reinserts the freed customers per the strategy; customers without a
    // feasible slot open singleton routes. Seeds the vertex cache.
    void destroy_repair(Solution& sol, Incumbent& incumbent, RepairStrategy strategy);

    // Runs operator levels until neither level improves.
    void local_search_improvement(Solution& sol, Incumbent& incumbent);

    // Executes one level's operators in random order until a full cycle
    // passes without improvement.
    void random_neighborhood_search(int level, Solution& sol, Incumbent& incumbent);

    // Scans the vertex cache and applies, per cached vertex, the best
    // improving non-tabu move of this kind among its granular neighbors.
    // Returns true when the solution improved.
    bool execute_operator(MoveKind kind, Solution& sol, Incumbent& incumbent);

    VertexCache& cache() { return cache_; }
    GranularState& granular() { return granular_; }
    const Params& params() const { return params_; }

private:
    const Instance& inst_;
    Params params_;
    Rng& rng_;
    VertexCache cache_;
    GranularState granular_;
    NodeIndex index_;
    std::vector<Move> scratch_moves_;
};

}  // namespace mscvrp
