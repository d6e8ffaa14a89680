#pragma once

#include "mscvrp/instance.hpp"

namespace mscvrp {

// Solver knobs. Defaults are the tuned values; pool size and initial granular
// size depend on the instance's route-size class.
struct Params {
    int savings_neighbor_cap = 100;  // pruned Clarke-Wright neighbor count
    int pool_min = 2;
    int pool_max = 2;                // 3 for long-route instances
    int cache_cap = 50;              // vertex cache bound
    int granular_init = 5;           // 10 for long-route instances
    int granular_growth = 5;
    int granular_max = 25;
    int tabu_cap = 50;
    double pr_truncation = 0.4;      // fraction of the relinking path explored
    RouteSizeClass size_class = RouteSizeClass::kShort;

    static Params for_instance(const Instance& inst) {
        Params p;
        p.size_class = inst.route_size_class();
        if (p.size_class == RouteSizeClass::kLong) {
            p.pool_max = 3;
            p.granular_init = 10;
        }
        return p;
    }
};

}  // namespace mscvrp
