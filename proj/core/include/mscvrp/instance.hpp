#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mscvrp/errors.hpp"

namespace mscvrp {

enum class RouteSizeClass { kShort, kLong };

// Immutable CVRP problem data: coordinates, demands, capacity, the rounded
// distance oracle, and per-node neighbor rankings. Safe to share across
// concurrent solver runs once constructed.
class Instance {
public:
    // Parses the keyword-section instance format (NAME / DIMENSION /
    // EDGE_WEIGHT_TYPE: EUC_2D / CAPACITY / NODE_COORD_SECTION /
    // DEMAND_SECTION / DEPOT_SECTION). The depot is remapped to node 0,
    // customers follow in file order as 1..N.
    static Instance parse(const std::string& text);
    static Instance from_file(const std::string& path);

    // Builds an instance directly from data. coords[0] is the depot.
    static Instance create(std::string name,
                           std::vector<double> xs,
                           std::vector<double> ys,
                           std::vector<long long> demands,
                           long long capacity);

    const std::string& name() const { return name_; }
    int dimension() const { return static_cast<int>(xs_.size()); }  // V = N + 1
    int customer_count() const { return dimension() - 1; }          // N
    long long capacity() const { return capacity_; }
    long long demand(int node) const { return demands_[node]; }
    long long demand_sum() const { return demand_sum_; }
    double x(int node) const { return xs_[node]; }
    double y(int node) const { return ys_[node]; }

    // Original 1-based node id from the instance file, for reporting.
    int file_id(int node) const { return file_ids_[node]; }

    // Rounded Euclidean metric (nearest integer, halves away from zero).
    long long distance(int i, int j) const {
        if (matrix_width_ > 0) return matrix_[static_cast<std::size_t>(i) * matrix_width_ + j];
        return rounded_distance(i, j);
    }

    // Unrounded metric, used by the feature extractor.
    double exact_distance(int i, int j) const;

    // Customers sorted by ascending rounded distance from `node` (ties by id).
    // Customer lists never contain the depot; the depot gets its own list.
    const std::vector<int>& neighbors_of(int node) const { return neighbors_[node]; }

    // 1-based position of customer j in i's sorted neighbor list.
    int neighbor_rank(int i, int j) const { return ranks_[static_cast<std::size_t>(i) * dimension() + j]; }

    // Fractional lower bound on the number of routes: sum of demands over Q.
    double fractional_route_bound() const {
        return static_cast<double>(demand_sum_) / static_cast<double>(capacity_);
    }

    // Estimated customers per route, Q divided by the mean demand over all
    // V nodes; instances above 20 are treated as long-route instances.
    double estimated_route_size() const;
    RouteSizeClass route_size_class() const;

    // Keyword-section serialization; parse(serialize()) reproduces the
    // instance exactly.
    std::string serialize() const;

private:
    Instance() = default;
    void finalize();
    long long rounded_distance(int i, int j) const;

    std::string name_;
    std::vector<double> xs_, ys_;
    std::vector<long long> demands_;
    std::vector<int> file_ids_;
    long long capacity_ = 0;
    long long demand_sum_ = 0;
    std::size_t matrix_width_ = 0;
    std::vector<long long> matrix_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<int> ranks_;
};

}  // namespace mscvrp
