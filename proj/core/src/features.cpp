#include "mscvrp/features.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace mscvrp {

namespace {

constexpr int kDepot = 0;

double population_std(const std::vector<double>& values, double mean) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

double mean_of(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return values.empty() ? 0.0 : acc / static_cast<double>(values.size());
}

// Polar angle of a node as seen from the depot, in [0, 2*pi).
double polar_angle(const Instance& inst, int node) {
    const double a = std::atan2(inst.y(node) - inst.y(kDepot), inst.x(node) - inst.x(kDepot));
    return a < 0 ? a + 2.0 * std::numbers::pi : a;
}

// Absolute angular difference at the depot, folded to [0, pi].
double rad_between(const Instance& inst, int a, int b) {
    double diff = std::fabs(polar_angle(inst, a) - polar_angle(inst, b));
    if (diff > std::numbers::pi) diff = 2.0 * std::numbers::pi - diff;
    return diff;
}

struct RouteGeometry {
    double gx = 0, gy = 0;        // center of gravity (customers + depot)
    double width = 0;             // spread across the depot-to-gravity line
    double span = 0;              // widest angle between two members
    double depth = 0;             // farthest member from the depot
    double length = 0;            // exact route length, depot legs included
    double ends_length = 0;       // first + last edge
    double longest_edge = 0;      // longest route edge, depot legs included
    double longest_pair = 0;      // longest distance between two members
    double longest_interior = 0;  // longest edge between consecutive members
    double end_demand = 0;        // demand of first + last member
    double max_demand = 0;
    double rank_avg = 0;          // mean neighbor rank along consecutive members
    double utilization = 0;
};

RouteGeometry route_geometry(const Instance& inst, const std::vector<int>& route, long long load) {
    RouteGeometry g;
    const std::size_t m = route.size();

    double sx = inst.x(kDepot), sy = inst.y(kDepot);
    for (int c : route) {
        sx += inst.x(c);
        sy += inst.y(c);
    }
    g.gx = sx / static_cast<double>(m + 1);
    g.gy = sy / static_cast<double>(m + 1);

    // Signed distance to the depot-to-gravity line, positive right of it.
    const double vx = g.gx - inst.x(kDepot), vy = g.gy - inst.y(kDepot);
    const double norm = std::hypot(vx, vy);
    double dmin = 0, dmax = 0;
    if (norm > 0) {
        bool first = true;
        for (int c : route) {
            const double cross = vx * (inst.y(c) - inst.y(kDepot)) - vy * (inst.x(c) - inst.x(kDepot));
            const double signed_dist = -cross / norm;
            if (first || signed_dist < dmin) dmin = signed_dist;
            if (first || signed_dist > dmax) dmax = signed_dist;
            first = false;
        }
    }
    g.width = dmax - dmin;

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            g.span = std::max(g.span, rad_between(inst, route[i], route[j]));
            g.longest_pair = std::max(g.longest_pair, inst.exact_distance(route[i], route[j]));
        }

    const double first_edge = inst.exact_distance(kDepot, route.front());
    const double last_edge = inst.exact_distance(route.back(), kDepot);
    g.length = first_edge + last_edge;
    g.longest_edge = std::max(first_edge, last_edge);
    double rank_sum = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double e = inst.exact_distance(route[i], route[i + 1]);
        g.length += e;
        g.longest_edge = std::max(g.longest_edge, e);
        g.longest_interior = std::max(g.longest_interior, e);
        // symmetric edge rank, so the value survives route reversal
        rank_sum += 0.5 * (inst.neighbor_rank(route[i], route[i + 1]) +
                           inst.neighbor_rank(route[i + 1], route[i]));
    }
    g.rank_avg = rank_sum / static_cast<double>(m);
    g.ends_length = first_edge + last_edge;
    g.end_demand = static_cast<double>(inst.demand(route.front()) + inst.demand(route.back()));
    for (int c : route) {
        g.depth = std::max(g.depth, inst.exact_distance(c, kDepot));
        g.max_demand = std::max(g.max_demand, static_cast<double>(inst.demand(c)));
    }
    g.utilization = static_cast<double>(load) / static_cast<double>(inst.capacity());
    return g;
}

}  // namespace

std::array<double, 9> instance_features(const Instance& inst, int route_count) {
    if (route_count < 1) throw ContractViolation("instance features need a positive route count");
    const int n = inst.customer_count();
    std::array<double, 9> f{};

    f[0] = static_cast<double>(n);            // I01
    f[1] = static_cast<double>(route_count);  // I02
    f[2] = static_cast<double>(inst.demand_sum()) /
           (static_cast<double>(inst.capacity()) * static_cast<double>(route_count));  // I03

    // Pairwise sums run over ordered customer pairs and divide by N, a scaled
    // mean; only relative values matter downstream.
    double pair_sum = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) pair_sum += inst.exact_distance(i, j);
    f[3] = pair_sum / static_cast<double>(n);  // I04
    double pair_var = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) {
                const double d = inst.exact_distance(i, j) - f[3];
                pair_var += d * d;
            }
    f[4] = std::sqrt(pair_var / static_cast<double>(n));  // I05

    std::vector<double> depot_dist(n), angles(n);
    for (int i = 1; i <= n; ++i) {
        depot_dist[i - 1] = inst.exact_distance(i, kDepot);
        angles[i - 1] = polar_angle(inst, i);
    }
    f[5] = mean_of(depot_dist);                 // I06
    f[6] = population_std(depot_dist, f[5]);    // I07
    f[7] = mean_of(angles);                     // I08
    f[8] = population_std(angles, f[7]);        // I09
    return f;
}

std::array<double, 22> solution_features(const Instance& inst, const Solution& sol) {
    const int r = sol.route_count();
    if (r < 1) throw ContractViolation("solution features need at least one route");

    std::vector<RouteGeometry> geo;
    geo.reserve(r);
    for (int k = 0; k < r; ++k) geo.push_back(route_geometry(inst, sol.routes()[k], sol.route_load(k)));

    auto collect = [&](auto proj) {
        std::vector<double> v(r);
        for (int k = 0; k < r; ++k) v[k] = proj(geo[k]);
        return v;
    };

    const auto widths = collect([](const RouteGeometry& g) { return g.width; });
    const auto spans = collect([](const RouteGeometry& g) { return g.span; });
    const auto depths = collect([](const RouteGeometry& g) { return g.depth; });
    const auto lengths = collect([](const RouteGeometry& g) { return g.length; });
    const auto max_demands = collect([](const RouteGeometry& g) { return g.max_demand; });
    const auto utilizations = collect([](const RouteGeometry& g) { return g.utilization; });
    const auto inv_longest = collect([](const RouteGeometry& g) { return 1.0 / g.longest_edge; });

    std::array<double, 22> s{};
    s[0] = mean_of(widths);                    // S01
    s[1] = population_std(widths, s[0]);       // S02
    s[2] = mean_of(spans);                     // S03
    s[3] = population_std(spans, s[2]);        // S04
    s[4] = mean_of(depths);                    // S05
    s[5] = population_std(depths, s[4]);       // S06

    double ratio_sum = 0, ends_sum = 0, longest_edge_sum = 0, end_demand_sum = 0, rank_sum = 0;
    double longest_pair = 0, longest_interior = 0;
    for (const auto& g : geo) {
        ratio_sum += g.ends_length / g.length;
        ends_sum += g.ends_length;
        longest_edge_sum += g.longest_edge;
        end_demand_sum += g.end_demand;
        rank_sum += g.rank_avg;
        longest_pair = std::max(longest_pair, g.longest_pair);
        longest_interior = std::max(longest_interior, g.longest_interior);
    }
    const double mean_length = mean_of(lengths);
    s[6] = ratio_sum / (2.0 * r);            // S07
    s[7] = longest_edge_sum / r;             // S08
    s[8] = longest_pair / mean_length;       // S09
    s[9] = longest_interior / mean_length;   // S10
    s[10] = ends_sum / (2.0 * r);            // S11
    s[11] = end_demand_sum / (2.0 * r);      // S12
    s[12] = mean_of(max_demands);            // S13
    s[13] = population_std(max_demands, s[12]);  // S14
    s[14] = population_std(lengths, mean_length);  // S15

    double gravity_sum = 0;  // mean over ordered pairs of gravity centers
    if (r > 1) {
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (a != b) gravity_sum += std::hypot(geo[a].gx - geo[b].gx, geo[a].gy - geo[b].gy);
        gravity_sum /= static_cast<double>(r) * static_cast<double>(r - 1);
    }
    s[15] = gravity_sum;  // S16 (zero for single-route solutions)

    const double target_size = static_cast<double>(inst.dimension()) / static_cast<double>(r);
    double size_var = 0;
    for (int k = 0; k < r; ++k) {
        const double dm = static_cast<double>(sol.routes()[k].size()) - target_size;
        size_var += dm * dm;
    }
    s[16] = std::sqrt(size_var / r);                         // S17
    s[17] = rank_sum / r;                                    // S18
    s[18] = mean_of(utilizations);                           // S19
    s[19] = population_std(utilizations, s[18]);             // S20
    s[20] = mean_of(inv_longest);                            // S21
    s[21] = population_std(inv_longest, s[20]);              // S22
    return s;
}

FeatureVector extract_features(const Instance& inst, const Solution& sol, std::optional<int> label) {
    FeatureVector fv;
    fv.instance_features = instance_features(inst, sol.route_count());
    fv.solution_features = solution_features(inst, sol);
    fv.label = label;
    return fv;
}

std::pair<double, double> utilization_stats(const Instance& inst, const Solution& sol) {
    const int r = sol.route_count();
    if (r < 1) throw ContractViolation("utilization stats need at least one route");
    std::vector<double> u(r);
    for (int k = 0; k < r; ++k)
        u[k] = static_cast<double>(sol.route_load(k)) / static_cast<double>(inst.capacity());
    const double mean = mean_of(u);
    return {mean, population_std(u, mean)};
}

std::pair<double, double> pool_guidance_stats(const Instance& inst, std::span<const Solution> pool) {
    if (pool.empty()) throw ContractViolation("guidance stats need a non-empty pool");
    double alpha = 0, beta = 0;
    for (const Solution& s : pool) {
        auto [mean, stdev] = utilization_stats(inst, s);
        alpha += mean;
        beta += stdev;
    }
    alpha /= static_cast<double>(pool.size());
    beta /= static_cast<double>(pool.size());
    return {alpha, beta};
}

std::string dataset_header() {
    std::string header;
    char buf[8];
    for (int i = 1; i <= 9; ++i) {
        std::snprintf(buf, sizeof(buf), "i%02d", i);
        header += buf;
        header += ',';
    }
    for (int i = 1; i <= 22; ++i) {
        std::snprintf(buf, sizeof(buf), "s%02d", i);
        header += buf;
        header += ',';
    }
    header += "label";
    return header;
}

std::string dataset_row(const FeatureVector& fv) {
    std::string row;
    char buf[48];
    for (double v : fv.instance_features) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        row += buf;
        row += ',';
    }
    for (double v : fv.solution_features) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        row += buf;
        row += ',';
    }
    if (fv.label) row += std::to_string(*fv.label);
    return row;
}

void export_dataset(std::ostream& out, std::span<const std::pair<std::string, FeatureVector>> rows) {
    out << dataset_header() << "\n";
    for (const auto& [id, fv] : rows) {
        (void)id;  // row order follows the input; ids are not a dataset column
        out << dataset_row(fv) << "\n";
    }
}

}  // namespace mscvrp
