#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mscvrp/instance.hpp"
#include "mscvrp/solution.hpp"

namespace mscvrp {

// Nine instance descriptors plus twenty-two solution descriptors, the schema
// of the exported learning dataset. Geometric quantities use unrounded
// coordinates and distances; the label marks optimal (1) vs near-optimal (0).
struct FeatureVector {
    std::array<double, 9> instance_features{};
    std::array<double, 22> solution_features{};
    std::optional<int> label;

    double i(int index) const { return instance_features[index - 1]; }   // i(3) == I03
    double s(int index) const { return solution_features[index - 1]; }   // s(19) == S19
};

// Instance descriptors; the route count of a reference solution supplies the
// vehicle-count and capacity-utilization entries.
std::array<double, 9> instance_features(const Instance& inst, int route_count);

std::array<double, 22> solution_features(const Instance& inst, const Solution& sol);

FeatureVector extract_features(const Instance& inst, const Solution& sol, std::optional<int> label = std::nullopt);

// Mean and population standard deviation of per-route capacity utilization
// (the two strongest quality signals; drives the guided diversity control).
std::pair<double, double> utilization_stats(const Instance& inst, const Solution& sol);

// Means of the two utilization statistics over a pool of solutions.
std::pair<double, double> pool_guidance_stats(const Instance& inst, std::span<const Solution> pool);

// CSV with header i01..i09,s01..s22,label; one row per entry. An unset label
// leaves the field empty.
void export_dataset(std::ostream& out, std::span<const std::pair<std::string, FeatureVector>> rows);
std::string dataset_header();
std::string dataset_row(const FeatureVector& fv);

}  // namespace mscvrp
