#pragma once

#include <optional>

#include "mscvrp/elite.hpp"
#include "mscvrp/instance.hpp"
#include "mscvrp/params.hpp"
#include "mscvrp/rng.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

// Pruned savings construction: starts from singleton routes and merges route
// ends in descending savings order, considering for each customer only its
// `neighbor_cap` nearest neighbors. Deterministic for a given instance.
Solution clarke_wright(const Instance& inst, int neighbor_cap);

// Destroys two random routes of `base` and reinserts the freed customers at
// their cheapest feasible positions; a customer without a feasible slot opens
// a singleton route with 50% probability, otherwise the candidate is
// abandoned. Accepted only when feasible and either cheaper than the base or
// within the estimated route count.
std::optional<Solution> perturbed_initial(const Solution& base, const Instance& inst, Rng& rng);

struct InitialPool {
    ElitePool pool;
    double alpha = 0;  // mean capacity-utilization average over the pool
    double beta = 0;   // mean capacity-utilization deviation over the pool
};

// Seeds a pool with the savings solution plus perturbed variants until the
// minimum size is reached (bounded retries; a final pass accepts any feasible
// perturbation). Returns the pool's utilization statistics for guided mode.
InitialPool generate_initial_pool(const Instance& inst, const Params& params, Rng& rng);

}  // namespace mscvrp
