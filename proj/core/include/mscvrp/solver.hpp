#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mscvrp/elite.hpp"
#include "mscvrp/instance.hpp"
#include "mscvrp/params.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

struct SolverConfig {
    enum class Mode { kPlain, kGuided };

    Mode mode = Mode::kPlain;
    bool enable_path_relinking = true;
    double time_limit_s = 60.0;
    std::uint64_t seed = 0;

    // Deterministic stopping rules for testing and reproduction. Wall-clock
    // stops cannot reproduce byte-identical runs; an iteration budget can.
    std::optional<long long> max_iterations;
    std::optional<long long> target_cost;  // stop once the incumbent reaches this

    bool record_trace = false;
    std::optional<Params> params;  // defaults to Params::for_instance
};

// Deterministic event log of one run. Contains no wall-clock values so two
// runs of the same configuration produce identical traces.
struct Trace {
    struct Improvement {
        long long iteration;
        long long cost;
    };
    struct Restart {
        long long iteration;
        long long counter;    // non-improving count that crossed the threshold
        long long threshold;  // active threshold at the restart
        double weight;        // guidance weight after the restart
    };
    struct WeightPoint {
        long long iteration;
        double weight;
    };
    std::vector<Improvement> improvements;
    std::vector<Restart> restarts;
    std::vector<WeightPoint> weight_timeline;
    long long pr_calls = 0;
    long long pr_offers = 0;
};

struct RunResult {
    Solution best;
    long long best_cost = 0;
    long long iterations = 0;
    double elapsed_s = 0;  // informational; never part of the trace
    Trace trace;
};

// Runs the full loop: seed the pool with constructions, then alternate the
// neighborhood-search phase, the hybrid split/path-relinking phase and the
// diversity control until the time budget (or a configured stop) is reached.
RunResult solve(const Instance& inst, const SolverConfig& config);

// Experiment protocol seed: run counter minus one.
std::uint64_t seed_for_run(int run_index);

}  // namespace mscvrp
