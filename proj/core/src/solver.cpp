#include "mscvrp/solver.hpp"

#include <chrono>

#include "mscvrp/construction.hpp"
#include "mscvrp/search.hpp"
#include "mscvrp/splitpr.hpp"

namespace mscvrp {

RunResult solve(const Instance& inst, const SolverConfig& config) {
    if (config.time_limit_s <= 0) throw ContractViolation("time limit must be positive");
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const Params params = config.params ? *config.params : Params::for_instance(inst);
    const bool guided = config.mode == SolverConfig::Mode::kGuided;
    Rng rng(config.seed);
    SearchEngine engine(inst, params, rng);

    RunResult result;
    Trace& trace = result.trace;

    InitialPool init = generate_initial_pool(inst, params, rng);
    ElitePool pool = std::move(init.pool);
    if (guided) {
        pool.set_guidance_weight(initial_guidance_weight(init.alpha, init.beta));
        if (config.record_trace) trace.weight_timeline.push_back({0, pool.guidance_weight()});
    }

    Incumbent incumbent;
    for (const Solution& s : pool.members()) incumbent.offer(s);
    if (config.record_trace) trace.improvements.push_back({0, incumbent.cost});

    long long previous_best = incumbent.cost;
    long long iteration = 0;

    while (true) {
        if (elapsed() >= config.time_limit_s) break;
        if (config.max_iterations && iteration >= *config.max_iterations) break;
        if (config.target_cost && incumbent.cost <= *config.target_cost) break;
        ++iteration;

        // Neighborhood search: take the pool's best members, perturb, improve,
        // and offer both the result and the original back.
        for (int n = 0; n < params.pool_min; ++n) {
            if (pool.size() == 0) break;
            Solution working = pool.extract_best();
            const Solution original = working;
            const RepairStrategy strategy =
                select_strategy(params.size_class, pool.regen_count(), /*new_best_found=*/false);
            engine.destroy_repair(working, incumbent, strategy);
            engine.local_search_improvement(working, incumbent);
            pool.offer(inst, std::move(working));
            pool.offer(inst, original);
        }

        if (config.enable_path_relinking) {
            const RelinkStats stats = path_relinking(inst, pool, incumbent, engine, rng);
            if (stats.performed) {
                ++trace.pr_calls;
                trace.pr_offers += stats.offers;
            }
        }

        const bool improved = incumbent.cost < previous_best;
        const ManageOutcome outcome = guided ? manage_guided(pool, improved, inst, params, rng)
                                             : manage_plain(pool, improved, inst, params, rng);
        if (outcome.restarted) {
            for (const Solution& s : pool.members()) incumbent.offer(s);
            if (config.record_trace) {
                trace.restarts.push_back({iteration, outcome.counter, outcome.threshold, outcome.weight});
                if (guided) trace.weight_timeline.push_back({iteration, outcome.weight});
            }
        }
        if (improved) {
            engine.granular().on_new_best();
            if (config.record_trace) trace.improvements.push_back({iteration, incumbent.cost});
        } else {
            engine.granular().on_stagnation();
        }
        previous_best = incumbent.cost;
    }

    const auto report = incumbent.best.check_feasible(inst);
    if (!report.feasible) throw ContractViolation("solver produced an infeasible incumbent: " + report.violation);
    if (incumbent.best.cost() != Solution::recompute_cost(inst, incumbent.best.routes()))
        throw ContractViolation("incumbent cost cache inconsistent with recomputation");

    result.best = std::move(incumbent.best);
    result.best_cost = incumbent.cost;
    result.iterations = iteration;
    result.elapsed_s = elapsed();
    return result;
}

std::uint64_t seed_for_run(int run_index) {
    if (run_index < 1) throw ContractViolation("run indices start at 1");
    return static_cast<std::uint64_t>(run_index - 1);
}

}  // namespace mscvrp
