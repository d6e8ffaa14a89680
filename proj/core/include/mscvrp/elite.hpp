#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "mscvrp/instance.hpp"
#include "mscvrp/params.hpp"
#include "mscvrp/rng.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

// Bounded set of unique high-quality solutions plus the diversity-control
// state: the non-improving counter, the regeneration counter and (in guided
// mode) the capacity-utilization weight that shortens the restart threshold.
class ElitePool {
public:
    ElitePool() = default;
    ElitePool(int min_size, int max_size) : min_size_(min_size), max_size_(max_size) {}

    int min_size() const { return min_size_; }
    int max_size() const { return max_size_; }
    const std::vector<Solution>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(const Solution& s) const { return keys_.count(s.canonical_key()) > 0; }

    int best_index() const;
    int worst_index() const;
    const Solution& best() const { return members_[best_index()]; }

    // Offers a solution to the pool. Duplicates are rejected; a full pool
    // replaces its worst member when the candidate is strictly cheaper, or,
    // within a 20% cost interval of the worst, when the candidate is farther
    // from the pool's best solution than the worst member is.
    bool offer(const Instance& inst, Solution candidate);

    // Removes and returns the cheapest member.
    Solution extract_best();

    void clear();

    long long non_improving() const { return non_improving_; }
    void reset_non_improving() { non_improving_ = 0; }
    void count_non_improving() { ++non_improving_; }

    int regen_count() const { return regen_count_; }
    void note_regeneration() { ++regen_count_; }
    void reset_regen_count() { regen_count_ = 0; }

    double guidance_weight() const { return guidance_weight_; }
    void set_guidance_weight(double w) { guidance_weight_ = w; }

private:
    std::vector<Solution> members_;
    std::unordered_set<std::string> keys_;
    int min_size_ = 2;
    int max_size_ = 2;
    long long non_improving_ = 0;
    int regen_count_ = 0;
    double guidance_weight_ = 1.0;
};

// Maximum non-improving iterations before a restart in plain mode, and the
// big constant scaled by the guidance weight in guided mode.
inline constexpr long long kRestartLimit = 4000;

// Keeps the guided threshold positive and no later than the plain one.
double clamp_guidance_weight(double w);

// Initial guidance weight from pool utilization statistics (mean minus
// standard deviation, clamped).
double initial_guidance_weight(double alpha, double beta);

struct ManageOutcome {
    bool restarted = false;
    long long counter = 0;    // non-improving count that triggered the check
    long long threshold = 0;  // active restart threshold
    double weight = 0;        // guidance weight after the call (guided mode)
};

// Fixed-threshold diversity control: reset the counter on improvement,
// otherwise count; past the limit the pool is discarded and regenerated.
ManageOutcome manage_plain(ElitePool& pool, bool improved, const Instance& inst, const Params& params, Rng& rng);

// Guided variant: the restart threshold is ceil(W * limit); each restart
// folds the fresh pool's utilization statistics into W.
ManageOutcome manage_guided(ElitePool& pool, bool improved, const Instance& inst, const Params& params, Rng& rng);

}  // namespace mscvrp
