#include "mscvrp/elite.hpp"

#include <cmath>

#include "mscvrp/construction.hpp"

namespace mscvrp {

int ElitePool::best_index() const {
    int best = 0;
    for (int i = 1; i < size(); ++i)
        if (members_[i].cost() < members_[best].cost()) best = i;
    return best;
}

int ElitePool::worst_index() const {
    // On cost ties the last member is the worst, so the best (first tied
    // member) is never evicted.
    int worst = 0;
    for (int i = 1; i < size(); ++i)
        if (members_[i].cost() >= members_[worst].cost()) worst = i;
    return worst;
}

bool ElitePool::offer(const Instance& inst, Solution candidate) {
    std::string key = candidate.canonical_key();
    if (keys_.count(key)) return false;

    if (size() < max_size_) {
        keys_.insert(std::move(key));
        members_.push_back(std::move(candidate));
        return true;
    }

    const int worst = worst_index();
    const long long worst_cost = members_[worst].cost();
    bool replace = candidate.cost() < worst_cost;
    if (!replace) {
        const double interval =
            static_cast<double>(candidate.cost() - worst_cost) / static_cast<double>(worst_cost);
        if (interval < 0.2) {
            const Solution& best = members_[best_index()];
            replace = proximity(inst, best, candidate) > proximity(inst, best, members_[worst]);
        }
    }
    if (!replace) return false;

    keys_.erase(members_[worst].canonical_key());
    keys_.insert(std::move(key));
    members_[worst] = std::move(candidate);
    return true;
}

Solution ElitePool::extract_best() {
    const int idx = best_index();
    Solution s = std::move(members_[idx]);
    members_.erase(members_.begin() + idx);
    keys_.erase(s.canonical_key());
    return s;
}

void ElitePool::clear() {
    members_.clear();
    keys_.clear();
}

double clamp_guidance_weight(double w) {
    const double floor = 1.0 / static_cast<double>(kRestartLimit);
    if (w < floor) return floor;
    if (w > 1.0) return 1.0;
    return w;
}

double initial_guidance_weight(double alpha, double beta) { return clamp_guidance_weight(alpha - beta); }

namespace {

ManageOutcome manage(ElitePool& pool,
                     bool improved,
                     const Instance& inst,
                     const Params& params,
                     Rng& rng,
                     bool guided) {
    ManageOutcome out;
    out.weight = pool.guidance_weight();
    out.threshold = guided
                        ? static_cast<long long>(std::ceil(pool.guidance_weight() * static_cast<double>(kRestartLimit)))
                        : kRestartLimit;
    if (improved) {
        pool.reset_non_improving();
        pool.reset_regen_count();
        out.counter = 0;
        return out;
    }
    pool.count_non_improving();
    out.counter = pool.non_improving();
    if (out.counter <= out.threshold) return out;

    // Stagnated: discard the members and reseed from fresh constructions.
    const double old_weight = pool.guidance_weight();
    const int regen = pool.regen_count();
    InitialPool fresh = generate_initial_pool(inst, params, rng);
    fresh.pool.reset_non_improving();
    double weight = old_weight;
    if (guided) weight = clamp_guidance_weight((old_weight + fresh.alpha + fresh.beta) / 2.0);
    fresh.pool.set_guidance_weight(weight);
    pool = std::move(fresh.pool);
    for (int i = 0; i < regen; ++i) pool.note_regeneration();
    pool.note_regeneration();

    out.restarted = true;
    out.weight = weight;
    return out;
}

}  // namespace

ManageOutcome manage_plain(ElitePool& pool, bool improved, const Instance& inst, const Params& params, Rng& rng) {
    return manage(pool, improved, inst, params, rng, /*guided=*/false);
}

ManageOutcome manage_guided(ElitePool& pool, bool improved, const Instance& inst, const Params& params, Rng& rng) {
    return manage(pool, improved, inst, params, rng, /*guided=*/true);
}

}  // namespace mscvrp
